//! Bhattacharya functions `B(r, s) = λ(A / I^r J^s)`, their polynomials in
//! the basis `C(r, i) C(s, j)`, and the mixed multiplicities read off the
//! top-degree coefficients.
//!
//! Fitting is exact: `B` is sampled on a `(d+1) × (d+1)` grid, the
//! binomial-basis system is solved over the rationals, and the result is
//! checked against `B` on a wider validation band. If either step fails the
//! base point is moved one step along the diagonal and the fit retried.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::binomial::{BinomialPolynomial2, HilbertPolynomial, binomial};
use crate::closure::require_m_primary;
use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::monomial::{DEFAULT_BOX_LIMIT, MonomialIdeal};
use crate::powers::ProductCache;

/// An inclusive rectangle `[r_lo, r_hi] × [s_lo, s_hi]` of bidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub r_lo: u32,
    pub r_hi: u32,
    pub s_lo: u32,
    pub s_hi: u32,
}

impl Window {
    pub fn new(r_lo: u32, r_hi: u32, s_lo: u32, s_hi: u32) -> Self {
        Window {
            r_lo,
            r_hi,
            s_lo,
            s_hi,
        }
    }

    /// `[0, r_hi] × [0, s_hi]`.
    pub fn from_origin(r_hi: u32, s_hi: u32) -> Self {
        Window::new(0, r_hi, 0, s_hi)
    }

    pub fn square(lo: u32, hi: u32) -> Self {
        Window::new(lo, hi, lo, hi)
    }

    pub fn points(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (self.r_lo..=self.r_hi).flat_map(move |r| (self.s_lo..=self.s_hi).map(move |s| (r, s)))
    }

    fn validate(&self) -> Result<()> {
        if self.r_lo > self.r_hi || self.s_lo > self.s_hi {
            return Err(Error::InvalidConfig(format!("empty window {self:?}")));
        }
        Ok(())
    }
}

/// Exact values of `B` on a window; row `r`, column `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BhattacharyaTable {
    pub i: MonomialIdeal,
    pub j: MonomialIdeal,
    pub window: Window,
    pub values: Vec<Vec<u64>>,
}

impl BhattacharyaTable {
    pub fn get(&self, r: u32, s: u32) -> Option<u64> {
        let w = &self.window;
        if r < w.r_lo || r > w.r_hi || s < w.s_lo || s > w.s_hi {
            return None;
        }
        Some(self.values[(r - w.r_lo) as usize][(s - w.s_lo) as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FitOptions {
    /// Total degree; defaults to the number of variables.
    pub d: Option<u32>,
    pub base: (u32, u32),
    pub validate_width: u32,
    pub max_shifts: u32,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            d: None,
            base: (0, 0),
            validate_width: 3,
            max_shifts: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub polynomial: BinomialPolynomial2,
    /// Base point of the accepted sample grid.
    pub base: (u32, u32),
    pub validated_on: Window,
    /// Least `(r*, s*)`, by `r* + s*` then `r*`, such that `P = B` on
    /// `[r*, r_hi] × [s*, s_hi]` of the validated window's bounding box from
    /// the origin. Empirical over that region only.
    pub postulation: Option<(u32, u32)>,
    pub shifts: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertFit {
    pub polynomial: HilbertPolynomial,
    /// `ē_0, ..., ē_d` of the usual normalization.
    pub standard: Vec<i64>,
    pub base: u32,
    pub validated_up_to: u32,
    /// Least `n*` with `P(n) = λ(A/I^n)` for all `n* ≤ n ≤ validated_up_to`.
    pub postulation: u32,
}

/// Memoizing evaluator of `B(r, s)` for one pair of ideals.
#[derive(Debug, Clone)]
pub struct Bhattacharya {
    cache: ProductCache,
    values: HashMap<(u32, u32), u64>,
    box_limit: u128,
}

impl Bhattacharya {
    /// `J` may be the unit ideal, which gives the Hilbert-Samuel function of `I`.
    pub fn new(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Self> {
        require_m_primary(i, "I")?;
        require_m_primary(j, "J")?;
        Ok(Bhattacharya {
            cache: ProductCache::new(i.clone(), j.clone())?,
            values: HashMap::new(),
            box_limit: DEFAULT_BOX_LIMIT,
        })
    }

    pub fn with_box_limit(mut self, limit: u128) -> Self {
        self.box_limit = limit;
        self
    }

    pub fn first(&self) -> &MonomialIdeal {
        self.cache.first()
    }

    pub fn second(&self) -> &MonomialIdeal {
        self.cache.second()
    }

    pub fn nvars(&self) -> usize {
        self.cache.nvars()
    }

    pub fn cache_mut(&mut self) -> &mut ProductCache {
        &mut self.cache
    }

    pub fn value(&mut self, r: u32, s: u32) -> Result<u64> {
        if let Some(&v) = self.values.get(&(r, s)) {
            return Ok(v);
        }
        let v = self
            .cache
            .product(r, s)
            .colength_with_limit(self.box_limit)?;
        self.values.insert((r, s), v);
        Ok(v)
    }

    pub fn table(&mut self, window: Window) -> Result<BhattacharyaTable> {
        window.validate()?;
        let mut values = Vec::new();
        for r in window.r_lo..=window.r_hi {
            let row = (window.s_lo..=window.s_hi)
                .map(|s| self.value(r, s))
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        Ok(BhattacharyaTable {
            i: self.first().clone(),
            j: self.second().clone(),
            window,
            values,
        })
    }

    pub fn fit(&mut self, opts: FitOptions) -> Result<FitReport> {
        let d = opts.d.unwrap_or(self.nvars() as u32);
        let index = BinomialPolynomial2::index_set(d);
        for shift in 0..=opts.max_shifts {
            let (r0, s0) = (opts.base.0 + shift, opts.base.1 + shift);
            let mut matrix = Vec::new();
            let mut rhs = Vec::new();
            for r in r0..=r0 + d {
                for s in s0..=s0 + d {
                    let row = index
                        .iter()
                        .map(|&(i, j)| {
                            Ok(BigInt::from(
                                binomial(r as u64, i as u64)? * binomial(s as u64, j as u64)?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    matrix.push(row);
                    rhs.push(BigInt::from(self.value(r, s)?));
                }
            }
            let coeffs = match linalg::solve(&matrix, &rhs) {
                Solution::Unique(c) => c,
                Solution::Inconsistent => continue,
                Solution::RankDeficient => {
                    return Err(Error::InvariantViolated(
                        "binomial sample grid is not unisolvent".into(),
                    ));
                }
            };
            let band = Window::new(
                r0,
                r0 + d + opts.validate_width,
                s0,
                s0 + d + opts.validate_width,
            );
            if !self.agrees_rational(&index, &coeffs, band)? {
                continue;
            }
            let ints = integral_coefficients(&index, &coeffs)?;
            let polynomial = BinomialPolynomial2::from_coefficients(d, &ints);
            let postulation = self.postulation(&polynomial, band)?;
            return Ok(FitReport {
                polynomial,
                base: (r0, s0),
                validated_on: band,
                postulation,
                shifts: shift,
            });
        }
        Err(Error::PolynomialRegimeNotReached {
            attempts: opts.max_shifts as usize + 1,
        })
    }

    fn agrees_rational(
        &mut self,
        index: &[(u32, u32)],
        coeffs: &[BigRational],
        band: Window,
    ) -> Result<bool> {
        for (r, s) in band.points() {
            let mut p = BigRational::from_integer(0.into());
            for (&(i, j), c) in index.iter().zip(coeffs) {
                let basis = binomial(r as u64, i as u64)? * binomial(s as u64, j as u64)?;
                p += c * BigRational::from_integer(basis.into());
            }
            if p != BigRational::from_integer(self.value(r, s)?.into()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn postulation(&mut self, p: &BinomialPolynomial2, band: Window) -> Result<Option<(u32, u32)>> {
        let (rh, sh) = (band.r_hi, band.s_hi);
        let mut agree = vec![vec![false; sh as usize + 1]; rh as usize + 1];
        for r in 0..=rh {
            for s in 0..=sh {
                agree[r as usize][s as usize] = p.eval(r, s)? == self.value(r, s)? as i128;
            }
        }
        let mut best: Option<(u32, u32)> = None;
        for a in 0..=rh {
            for b in 0..=sh {
                let ok = (a..=rh).all(|r| (b..=sh).all(|s| agree[r as usize][s as usize]));
                let better = match best {
                    None => true,
                    Some((ba, bb)) => (a + b, a) < (ba + bb, ba),
                };
                if ok && better {
                    best = Some((a, b));
                }
            }
        }
        Ok(best)
    }

    /// `Δ_r^i Δ_s^j B` at `(r, s)`.
    pub fn forward_difference(&mut self, i: u32, j: u32, r: u32, s: u32) -> Result<i128> {
        let mut acc: i128 = 0;
        for p in 0..=i {
            for q in 0..=j {
                let sign = if (i - p + j - q).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                let c = binomial(i as u64, p as u64)? * binomial(j as u64, q as u64)?;
                acc += sign * c * self.value(r + p, s + q)? as i128;
            }
        }
        Ok(acc)
    }

    /// Mixed multiplicities `e_j(I|J) = e_{d-j, j}`, `j = 0..=d`, from the
    /// fit, each confirmed by iterated forward differences of `B`.
    pub fn mixed_multiplicities(&mut self, fit: &FitReport) -> Result<Vec<i64>> {
        let d = fit.polynomial.d;
        let mut out = Vec::with_capacity(d as usize + 1);
        for j in 0..=d {
            let i = d - j;
            let from_fit = fit.polynomial.coeff(i, j);
            let from_diff = self.stable_difference(i, j, fit.base, 2 * (d + 4))?;
            if from_diff != from_fit as i128 {
                return Err(Error::ExtractionDisagreement {
                    index: format!("{i}{j}"),
                    fit: from_fit,
                    difference: from_diff.try_into().unwrap_or(i64::MAX),
                });
            }
            out.push(from_fit);
        }
        Ok(out)
    }

    /// Evaluates `Δ_r^i Δ_s^j B` along the diagonal from `base` until two
    /// consecutive values agree.
    fn stable_difference(
        &mut self,
        i: u32,
        j: u32,
        base: (u32, u32),
        max_steps: u32,
    ) -> Result<i128> {
        let mut prev = self.forward_difference(i, j, base.0, base.1)?;
        for t in 1..=max_steps {
            let next = self.forward_difference(i, j, base.0 + t, base.1 + t)?;
            if next == prev {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::PolynomialRegimeNotReached {
            attempts: max_steps as usize,
        })
    }
}

fn integral_coefficients(index: &[(u32, u32)], coeffs: &[BigRational]) -> Result<Vec<i64>> {
    index
        .iter()
        .zip(coeffs)
        .map(|(&(i, j), c)| {
            if !c.is_integer() {
                return Err(Error::NonIntegralCoefficient {
                    index: format!("{i}{j}"),
                    coefficient: c.to_string(),
                });
            }
            c.to_integer()
                .to_i64()
                .ok_or(Error::Overflow("fitted coefficient"))
        })
        .collect()
}

/// `B(r, s) = λ(A / I^r J^s)`.
pub fn bhattacharya(i: &MonomialIdeal, j: &MonomialIdeal, r: u32, s: u32) -> Result<u64> {
    Bhattacharya::new(i, j)?.value(r, s)
}

pub fn table(i: &MonomialIdeal, j: &MonomialIdeal, window: Window) -> Result<BhattacharyaTable> {
    Bhattacharya::new(i, j)?.table(window)
}

pub fn fit(i: &MonomialIdeal, j: &MonomialIdeal, opts: FitOptions) -> Result<FitReport> {
    Bhattacharya::new(i, j)?.fit(opts)
}

pub fn mixed_multiplicities(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Vec<i64>> {
    let mut engine = Bhattacharya::new(i, j)?;
    let report = engine.fit(FitOptions::default())?;
    engine.mixed_multiplicities(&report)
}

/// Fits `λ(A/I^n)` in the basis `C(n, d), C(n, d-1), ..., 1`.
pub fn hilbert_fit_single(i: &MonomialIdeal) -> Result<HilbertFit> {
    hilbert_fit_single_with(i, FitOptions::default())
}

/// [`hilbert_fit_single`] with explicit base (`opts.base.0`), validation
/// width and retry budget.
pub fn hilbert_fit_single_with(i: &MonomialIdeal, opts: FitOptions) -> Result<HilbertFit> {
    let mut engine = Bhattacharya::new(i, &MonomialIdeal::unit(i.nvars()))?;
    let d = opts.d.unwrap_or(i.nvars() as u32);
    for shift in 0..=opts.max_shifts {
        let n0 = opts.base.0 + shift;
        let mut matrix = Vec::new();
        let mut rhs = Vec::new();
        for n in n0..=n0 + d {
            let row = (0..=d)
                .map(|k| Ok(BigInt::from(binomial(n as u64, (d - k) as u64)?)))
                .collect::<Result<Vec<_>>>()?;
            matrix.push(row);
            rhs.push(BigInt::from(engine.value(n, 0)?));
        }
        let coeffs = match linalg::solve(&matrix, &rhs) {
            Solution::Unique(c) => c,
            Solution::Inconsistent => continue,
            Solution::RankDeficient => {
                return Err(Error::InvariantViolated(
                    "binomial sample is not unisolvent".into(),
                ));
            }
        };
        let index: Vec<(u32, u32)> = (0..=d).map(|k| (d - k, 0)).collect();
        let band = Window::new(n0, n0 + d + opts.validate_width, 0, 0);
        if !engine.agrees_rational(&index, &coeffs, band)? {
            continue;
        }
        let polynomial = HilbertPolynomial {
            d,
            coefficients: integral_coefficients(&index, &coeffs)?,
        };
        let hi = band.r_hi;
        let mut postulation = hi;
        while postulation > 0
            && polynomial.eval(postulation - 1)? == engine.value(postulation - 1, 0)? as i128
        {
            postulation -= 1;
        }
        return Ok(HilbertFit {
            standard: polynomial.standard_form()?,
            polynomial,
            base: n0,
            validated_up_to: hi,
            postulation,
        });
    }
    Err(Error::PolynomialRegimeNotReached {
        attempts: opts.max_shifts as usize + 1,
    })
}

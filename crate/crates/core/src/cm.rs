//! Difference tables `P - B`, indirect local-cohomology lengths in
//! dimension 2, coefficient inequalities, and the Cohen-Macaulay criterion
//! for the bigraded Rees algebra `A[I t_1, J t_2]`.
//!
//! In dimension 2,
//!
//! ```text
//! P(r, s) - B(r, s) = λ(H²(R)_(r,s)) - λ((I^r J^s)~ / I^r J^s),
//! ```
//!
//! so the top local cohomology length is `P - B` plus the Ratliff-Rush
//! defect. The Rees algebra is Cohen-Macaulay exactly when
//! `e_10 = λ(A/I)` and `e_01 = λ(A/J)`; that coefficient test is the
//! certificate used for the verdict. The other equivalent conditions are
//! checked as corroboration only, and Cohen-Macaulayness itself is never
//! computed from a resolution.

use serde::Serialize;

use crate::bhattacharya::{Bhattacharya, FitOptions, FitReport, Window};
use crate::binomial::BinomialPolynomial2;
use crate::closure::{ClosureConfig, rr_defect_cached};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::reductions::{DEFAULT_R_MAX, is_reduction, joint_reduction_zero};

/// Exact grid of `P(r,s) - B(r,s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceTable {
    pub window: Window,
    pub values: Vec<Vec<i128>>,
}

impl DifferenceTable {
    pub fn get(&self, r: u32, s: u32) -> Option<i128> {
        let w = &self.window;
        if r < w.r_lo || r > w.r_hi || s < w.s_lo || s > w.s_hi {
            return None;
        }
        Some(self.values[(r - w.r_lo) as usize][(s - w.s_lo) as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H2Length {
    pub value: u64,
    /// The Ratliff-Rush closure entering the value hit its cap.
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    pub holds: bool,
    pub window: Window,
    /// `((r, s), λ(H²)_(r,s), λ(H²)_(r+1,s+1))` for the first failure.
    pub first_violation: Option<((u32, u32), u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityAudit {
    pub dim: usize,
    pub len_i: u64,
    pub len_j: u64,
    /// Right-hand sides: `e_10, e_01` in dimension 2, `e_10 + e_00`,
    /// `e_01 + e_00` in dimension 1.
    pub bound_i: i64,
    pub bound_j: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MixedIdentity {
    pub e11: i64,
    /// `λ(A/IJ) - λ(A/I) - λ(A/J)`.
    pub colength_difference: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cond3Witnesses {
    /// `(x ∈ I, y ∈ J)` with `xJ + yI = IJ` expected.
    pub joint: (Monomial, Monomial),
    pub reduction_i: Vec<Monomial>,
    pub reduction_j: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cond3Report {
    pub joint_reduction_zero: bool,
    pub reduction_number_i: Option<u32>,
    pub reduction_number_j: Option<u32>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowCheck {
    pub holds: bool,
    pub window: Window,
    pub first_mismatch: Option<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CohenMacaulay,
    NotCohenMacaulay,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CMReport {
    pub e_coeffs: BinomialPolynomial2,
    pub len_i: u64,
    pub len_j: u64,
    pub e10: i64,
    pub e01: i64,
    pub e00: i64,
    /// `e_10 = λ(A/I)` and `e_01 = λ(A/J)`; decides the verdict.
    pub cond1: bool,
    pub cond1prime: bool,
    /// `P = B` on the window.
    pub cond2_window: WindowCheck,
    /// Joint reduction number zero and reduction numbers at most one,
    /// when witnesses were supplied.
    pub cond3: Option<Cond3Report>,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    pub justification: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMOptions {
    /// `P = B` is checked on `[0, R] × [0, S]`.
    pub window: (u32, u32),
    pub witnesses: Option<Cond3Witnesses>,
    pub r_max: u32,
}

impl Default for CMOptions {
    fn default() -> Self {
        CMOptions {
            window: (4, 4),
            witnesses: None,
            r_max: DEFAULT_R_MAX,
        }
    }
}

/// A fitted pair `(I, J)` with the memo tables reused by every check.
#[derive(Debug, Clone)]
pub struct PairAnalysis {
    engine: Bhattacharya,
    fit: FitReport,
    closure: ClosureConfig,
}

impl PairAnalysis {
    pub fn new(
        i: &MonomialIdeal,
        j: &MonomialIdeal,
        fit_opts: FitOptions,
        closure: ClosureConfig,
    ) -> Result<Self> {
        let mut engine = Bhattacharya::new(i, j)?;
        let fit = engine.fit(fit_opts)?;
        Ok(PairAnalysis {
            engine,
            fit,
            closure,
        })
    }

    pub fn fit(&self) -> &FitReport {
        &self.fit
    }

    pub fn polynomial(&self) -> &BinomialPolynomial2 {
        &self.fit.polynomial
    }

    pub fn engine_mut(&mut self) -> &mut Bhattacharya {
        &mut self.engine
    }

    fn dim(&self) -> usize {
        self.engine.nvars()
    }

    fn require_dim2(&self) -> Result<()> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension {
                required: 2,
                found: self.dim(),
            });
        }
        Ok(())
    }

    pub fn difference(&mut self, r: u32, s: u32) -> Result<i128> {
        Ok(self.fit.polynomial.eval(r, s)? - self.engine.value(r, s)? as i128)
    }

    pub fn difference_table(&mut self, window: Window) -> Result<DifferenceTable> {
        let values = (window.r_lo..=window.r_hi)
            .map(|r| {
                (window.s_lo..=window.s_hi)
                    .map(|s| self.difference(r, s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DifferenceTable { window, values })
    }

    /// `λ(H²(R)_(r,s)) = P(r,s) - B(r,s) + λ((I^r J^s)~ / I^r J^s)`.
    pub fn h2_length(&mut self, r: u32, s: u32) -> Result<H2Length> {
        self.require_dim2()?;
        let diff = self.difference(r, s)?;
        let defect = rr_defect_cached(self.engine.cache_mut(), r, s, self.closure)?;
        let value = diff + defect.defect as i128;
        if value < 0 {
            return Err(Error::InvariantViolated(format!(
                "negative local cohomology length {value} at ({r},{s}){}",
                if defect.capped {
                    " with capped closure"
                } else {
                    ""
                }
            )));
        }
        Ok(H2Length {
            value: value as u64,
            capped: defect.capped,
        })
    }

    /// `e_00 = λ(H²(R)_(0,0))`.
    pub fn e00_identity_check(&mut self) -> Result<bool> {
        let h = self.h2_length(0, 0)?;
        Ok(h.value as i128 == self.fit.polynomial.coeff(0, 0) as i128)
    }

    /// `λ(H²)_(r+1,s+1) ≤ λ(H²)_(r,s)` across the window.
    pub fn diagonal_monotonicity(&mut self, window: Window) -> Result<Monotonicity> {
        self.require_dim2()?;
        for (r, s) in window.points() {
            if r + 1 > window.r_hi || s + 1 > window.s_hi {
                continue;
            }
            let here = self.h2_length(r, s)?.value;
            let next = self.h2_length(r + 1, s + 1)?.value;
            if next > here {
                return Ok(Monotonicity {
                    holds: false,
                    window,
                    first_violation: Some(((r, s), here, next)),
                });
            }
        }
        Ok(Monotonicity {
            holds: true,
            window,
            first_violation: None,
        })
    }

    fn lens(&mut self) -> Result<(u64, u64)> {
        Ok((self.engine.value(1, 0)?, self.engine.value(0, 1)?))
    }

    /// `λ(A/I) ≥ e_10`, `λ(A/J) ≥ e_01` in dimension 2 and
    /// `λ(A/I) ≥ e_10 + e_00`, `λ(A/J) ≥ e_01 + e_00` in dimension 1.
    /// A violation is reported as an error: both bounds are theorems.
    pub fn inequality_audit(&mut self) -> Result<InequalityAudit> {
        let p = &self.fit.polynomial;
        let (e10, e01, e00) = (p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0));
        let (bound_i, bound_j) = match self.dim() {
            2 => (e10, e01),
            1 => (e10 + e00, e01 + e00),
            found => return Err(Error::UnsupportedDimension { required: 2, found }),
        };
        let (len_i, len_j) = self.lens()?;
        if (len_i as i128) < bound_i as i128 || (len_j as i128) < bound_j as i128 {
            return Err(Error::InvariantViolated(format!(
                "coefficient bound fails: λ(A/I) = {len_i} vs {bound_i}, λ(A/J) = {len_j} vs {bound_j}"
            )));
        }
        Ok(InequalityAudit {
            dim: self.dim(),
            len_i,
            len_j,
            bound_i,
            bound_j,
        })
    }

    /// Compares `e_11` with `λ(A/IJ) - λ(A/I) - λ(A/J)`; `e_11` is never
    /// smaller, and equality is the joint-reduction-number-zero identity.
    pub fn e1_mixed_identity_check(&mut self) -> Result<MixedIdentity> {
        self.require_dim2()?;
        let e11 = self.fit.polynomial.coeff(1, 1);
        let (len_i, len_j) = self.lens()?;
        let len_ij = self.engine.value(1, 1)?;
        let diff = len_ij as i64 - len_i as i64 - len_j as i64;
        if e11 < diff {
            return Err(Error::InvariantViolated(format!(
                "e_11 = {e11} below λ(A/IJ) - λ(A/I) - λ(A/J) = {diff}"
            )));
        }
        Ok(MixedIdentity {
            e11,
            colength_difference: diff,
            holds: e11 == diff,
        })
    }

    fn cond2(&mut self, (r_hi, s_hi): (u32, u32)) -> Result<WindowCheck> {
        let window = Window::from_origin(r_hi, s_hi);
        for (r, s) in window.points() {
            if self.difference(r, s)? != 0 {
                return Ok(WindowCheck {
                    holds: false,
                    window,
                    first_mismatch: Some((r, s)),
                });
            }
        }
        Ok(WindowCheck {
            holds: true,
            window,
            first_mismatch: None,
        })
    }

    fn cond3(&mut self, w: &Cond3Witnesses, r_max: u32) -> Result<Cond3Report> {
        let i = self.engine.first().clone();
        let j = self.engine.second().clone();
        let jr = joint_reduction_zero(&w.joint.0, &w.joint.1, &i, &j)?;
        let ki = MonomialIdeal::minimalize(i.nvars(), w.reduction_i.iter().cloned())?;
        let kj = MonomialIdeal::minimalize(j.nvars(), w.reduction_j.iter().cloned())?;
        let ri = is_reduction(&ki, &i, r_max)?.witness_r;
        let rj = is_reduction(&kj, &j, r_max)?.witness_r;
        let at_most_one = |r: Option<u32>| r.is_some_and(|r| r <= 1);
        Ok(Cond3Report {
            joint_reduction_zero: jr,
            reduction_number_i: ri,
            reduction_number_j: rj,
            holds: jr && at_most_one(ri) && at_most_one(rj),
        })
    }

    pub fn report(&mut self, opts: &CMOptions) -> Result<CMReport> {
        self.require_dim2()?;
        self.inequality_audit()?;
        let p = self.fit.polynomial.clone();
        let (e10, e01, e00) = (p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0));
        let (len_i, len_j) = self.lens()?;
        let cond1 = e10 as i128 == len_i as i128 && e01 as i128 == len_j as i128;
        let cond1prime = e10 as i128 >= len_i as i128 && e01 as i128 >= len_j as i128;
        let cond2_window = self.cond2(opts.window)?;
        let cond3 = match &opts.witnesses {
            Some(w) => Some(self.cond3(w, opts.r_max)?),
            None => None,
        };

        let mut evidence = Vec::new();
        if (e10 as i128) < len_i as i128 {
            evidence.push(format!("e10 = {e10} < λ(A/I) = {len_i}"));
        }
        if (e01 as i128) < len_j as i128 {
            evidence.push(format!("e01 = {e01} < λ(A/J) = {len_j}"));
        }
        if e00 != 0 {
            evidence.push(format!("e00 = {e00} ≠ 0"));
        }
        let verdict = if cond1 {
            Verdict::CohenMacaulay
        } else {
            Verdict::NotCohenMacaulay
        };
        if cond1 && !cond1prime {
            return Err(Error::InvariantViolated("cond1 without cond1'".into()));
        }
        if verdict == Verdict::NotCohenMacaulay && evidence.is_empty() {
            return Err(Error::InvariantViolated(
                "not-CM verdict without evidence".into(),
            ));
        }
        let justification = format!(
            "verdict certified by the coefficient criterion e10 = λ(A/I), e01 = λ(A/J) \
             ({}); P = B checked on [0,{}]×[0,{}] and the joint-reduction conditions are \
             corroboration only; Cohen-Macaulayness of the Rees algebra is not computed directly",
            if cond1 { "holds" } else { "fails" },
            opts.window.0,
            opts.window.1,
        );
        Ok(CMReport {
            e_coeffs: p,
            len_i,
            len_j,
            e10,
            e01,
            e00,
            cond1,
            cond1prime,
            cond2_window,
            cond3,
            verdict,
            evidence,
            justification,
        })
    }
}

pub fn difference_table(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    window: Window,
) -> Result<DifferenceTable> {
    PairAnalysis::new(i, j, FitOptions::default(), ClosureConfig::default())?
        .difference_table(window)
}

pub fn h2_length(i: &MonomialIdeal, j: &MonomialIdeal, r: u32, s: u32) -> Result<H2Length> {
    if i.nvars() != 2 {
        return Err(Error::UnsupportedDimension {
            required: 2,
            found: i.nvars(),
        });
    }
    PairAnalysis::new(i, j, FitOptions::default(), ClosureConfig::default())?.h2_length(r, s)
}

pub fn jr_criterion_report(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    opts: &CMOptions,
) -> Result<CMReport> {
    if i.nvars() != 2 {
        return Err(Error::UnsupportedDimension {
            required: 2,
            found: i.nvars(),
        });
    }
    PairAnalysis::new(i, j, FitOptions::default(), ClosureConfig::default())?.report(opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(exps: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(exps[0].len(), exps).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn m() -> MonomialIdeal {
        MonomialIdeal::maximal(2)
    }

    fn colength16() -> MonomialIdeal {
        ideal(&[&[3, 0], &[2, 4], &[1, 5], &[0, 7]])
    }

    fn jacobian(n: u32) -> MonomialIdeal {
        ideal(&[&[n - 1, 0], &[0, 1]])
    }

    fn analysis(i: &MonomialIdeal, j: &MonomialIdeal) -> PairAnalysis {
        PairAnalysis::new(i, j, FitOptions::default(), ClosureConfig::default()).unwrap()
    }

    #[test]
    fn difference_examples() {
        let t = difference_table(&m(), &m(), Window::from_origin(4, 4)).unwrap();
        assert!(t.values.iter().flatten().all(|&v| v == 0));
        let mut a = analysis(&m(), &colength16());
        assert_eq!(a.difference(0, 0).unwrap(), 1);
        assert_eq!(a.difference(1, 1).unwrap(), 0);
    }

    #[test]
    fn h2_examples() {
        let mut a = analysis(&m(), &colength16());
        assert_eq!(a.h2_length(0, 0).unwrap().value, 1);
        let mut b = analysis(&m(), &m());
        for (r, s) in Window::from_origin(3, 3).points() {
            assert_eq!(b.h2_length(r, s).unwrap().value, 0);
        }
        assert_eq!(h2_length(&m(), &jacobian(3), 0, 0).unwrap().value, 0);
    }

    #[test]
    fn h2_requires_dimension_two() {
        let i = MonomialIdeal::maximal(3);
        let err = h2_length(&i, &i, 0, 0).unwrap_err();
        assert_eq!(
            err,
            Error::UnsupportedDimension {
                required: 2,
                found: 3
            }
        );
    }

    #[test]
    fn e00_identity() {
        assert!(analysis(&m(), &colength16()).e00_identity_check().unwrap());
        assert!(analysis(&m(), &m()).e00_identity_check().unwrap());
        assert!(analysis(&m(), &jacobian(3)).e00_identity_check().unwrap());
    }

    #[test]
    fn monotonicity_examples() {
        let w = Window::from_origin(4, 4);
        assert!(
            analysis(&m(), &colength16())
                .diagonal_monotonicity(w)
                .unwrap()
                .holds
        );
        assert!(analysis(&m(), &m()).diagonal_monotonicity(w).unwrap().holds);
        assert!(
            analysis(&m(), &jacobian(3))
                .diagonal_monotonicity(w)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn inequality_examples() {
        let audit = analysis(&m(), &colength16()).inequality_audit().unwrap();
        assert_eq!((audit.len_i, audit.bound_i), (1, 1));
        assert_eq!((audit.len_j, audit.bound_j), (16, 15));
        let audit = analysis(&m(), &m()).inequality_audit().unwrap();
        assert_eq!(
            (audit.len_i, audit.bound_i, audit.len_j, audit.bound_j),
            (1, 1, 1, 1)
        );
        let audit = analysis(&ideal(&[&[2]]), &ideal(&[&[3]]))
            .inequality_audit()
            .unwrap();
        assert_eq!(audit.dim, 1);
        assert_eq!((audit.len_i, audit.bound_i), (2, 2));
        assert_eq!((audit.len_j, audit.bound_j), (3, 3));
    }

    #[test]
    fn mixed_identity_examples() {
        let id = analysis(&m(), &jacobian(3))
            .e1_mixed_identity_check()
            .unwrap();
        assert_eq!((id.e11, id.colength_difference, id.holds), (1, 1, true));
        let id = analysis(&m(), &m()).e1_mixed_identity_check().unwrap();
        assert_eq!((id.e11, id.colength_difference, id.holds), (1, 1, true));
        let id = analysis(&m(), &colength16())
            .e1_mixed_identity_check()
            .unwrap();
        assert_eq!((id.e11, id.colength_difference, id.holds), (3, 3, true));
    }

    #[test]
    fn report_cm_for_jacobian_pair() {
        let opts = CMOptions {
            witnesses: Some(Cond3Witnesses {
                joint: (mono(&[1, 0]), mono(&[0, 1])),
                reduction_i: vec![mono(&[1, 0]), mono(&[0, 1])],
                reduction_j: vec![mono(&[2, 0]), mono(&[0, 1])],
            }),
            ..CMOptions::default()
        };
        let rep = jr_criterion_report(&m(), &jacobian(3), &opts).unwrap();
        assert!(rep.cond1 && rep.cond1prime);
        assert_eq!((rep.e10, rep.e01, rep.e00), (1, 2, 0));
        assert_eq!(rep.verdict, Verdict::CohenMacaulay);
        assert!(rep.cond2_window.holds);
        let c3 = rep.cond3.unwrap();
        assert!(c3.holds);
        assert_eq!(
            (c3.reduction_number_i, c3.reduction_number_j),
            (Some(0), Some(0))
        );
    }

    #[test]
    fn report_not_cm() {
        let opts = CMOptions {
            witnesses: Some(Cond3Witnesses {
                joint: (mono(&[1, 0]), mono(&[0, 7])),
                reduction_i: vec![mono(&[1, 0]), mono(&[0, 1])],
                reduction_j: vec![mono(&[3, 0]), mono(&[0, 7])],
            }),
            ..CMOptions::default()
        };
        let rep = jr_criterion_report(&m(), &colength16(), &opts).unwrap();
        assert!(!rep.cond1);
        assert_eq!(rep.verdict, Verdict::NotCohenMacaulay);
        assert_eq!(rep.e00, 1);
        assert!(
            rep.evidence
                .iter()
                .any(|e| e.contains("e01 = 15 < λ(A/J) = 16"))
        );
        assert!(!rep.cond2_window.holds);
        assert_eq!(rep.cond3.unwrap().reduction_number_j, Some(2));
    }

    #[test]
    fn report_maximal_pair() {
        let rep = jr_criterion_report(&m(), &m(), &CMOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CohenMacaulay);
        assert!(rep.cond3.is_none());
    }

    #[test]
    fn report_refuses_dimension_three() {
        let i = ideal(&[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 0, 1]]);
        let j = ideal(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 1]]);
        let err = jr_criterion_report(&i, &j, &CMOptions::default()).unwrap_err();
        assert_eq!(err.code(), "E_UNSUPPORTED_DIMENSION");
    }
}

//! Polynomials written in binomial bases.

use serde::Serialize;

use crate::error::{Error, Result};

/// `C(n, k)` for `n ≥ 0`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Result<i128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 0..k {
        // acc * (n - t) is divisible by t + 1 at every step
        acc = acc
            .checked_mul((n - t) as i128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (t as i128 + 1);
    }
    Ok(acc)
}

/// One coefficient `e_ij` of a [`BinomialPolynomial2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    pub i: u32,
    pub j: u32,
    pub e: i64,
}

/// `P(r, s) = Σ_{i+j ≤ d} e_ij C(r, i) C(s, j)` with integer `e_ij`.
///
/// Terms are kept in the order `e_d0, e_(d-1)1, ..., e_0d, e_(d-1)0, ...,
/// e_00`: descending total degree, then descending `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialPolynomial2 {
    pub d: u32,
    terms: Vec<Term>,
}

impl BinomialPolynomial2 {
    /// The index set `(i, j)`, `i + j ≤ d`, in canonical order.
    pub fn index_set(d: u32) -> Vec<(u32, u32)> {
        (0..=d)
            .rev()
            .flat_map(|total| (0..=total).rev().map(move |i| (i, total - i)))
            .collect()
    }

    /// Builds a polynomial from coefficients listed in [`Self::index_set`] order.
    pub fn from_coefficients(d: u32, coeffs: &[i64]) -> Self {
        let idx = Self::index_set(d);
        assert_eq!(idx.len(), coeffs.len(), "coefficient count for degree {d}");
        let terms = idx
            .into_iter()
            .zip(coeffs)
            .map(|((i, j), &e)| Term { i, j, e })
            .collect();
        BinomialPolynomial2 { d, terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> i64 {
        self.terms
            .iter()
            .find(|t| t.i == i && t.j == j)
            .map_or(0, |t| t.e)
    }

    /// Coefficients in [`Self::index_set`] order.
    pub fn coefficients(&self) -> Vec<i64> {
        self.terms.iter().map(|t| t.e).collect()
    }

    /// The coefficients with `i + j = d`, listed as `e_{d-j, j}` for `j = 0..=d`.
    pub fn top_degree(&self) -> Vec<i64> {
        (0..=self.d).map(|j| self.coeff(self.d - j, j)).collect()
    }

    pub fn eval(&self, r: u32, s: u32) -> Result<i128> {
        let mut acc: i128 = 0;
        for t in &self.terms {
            let v = binomial(r as u64, t.i as u64)?
                .checked_mul(binomial(s as u64, t.j as u64)?)
                .and_then(|v| v.checked_mul(t.e as i128))
                .ok_or(Error::Overflow("polynomial evaluation"))?;
            acc = acc
                .checked_add(v)
                .ok_or(Error::Overflow("polynomial evaluation"))?;
        }
        Ok(acc)
    }
}

/// A single-variable Hilbert polynomial `Σ_k e_k C(n, d - k)`.
///
/// This is the normalization `λ(A/I^n) = e_0 C(n,2) + e_1 n + e_2` used
/// in dimension 2; it differs from the usual normalization
/// `Σ_k (-1)^k ē_k C(n + d - 1 - k, d - k)`, which is available through
/// [`HilbertPolynomial::standard_form`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertPolynomial {
    pub d: u32,
    pub coefficients: Vec<i64>,
}

impl HilbertPolynomial {
    pub fn eval(&self, n: u32) -> Result<i128> {
        let mut acc: i128 = 0;
        for (k, &e) in self.coefficients.iter().enumerate() {
            let v = binomial(n as u64, (self.d as usize - k) as u64)?
                .checked_mul(e as i128)
                .ok_or(Error::Overflow("polynomial evaluation"))?;
            acc = acc
                .checked_add(v)
                .ok_or(Error::Overflow("polynomial evaluation"))?;
        }
        Ok(acc)
    }

    /// Coefficients `ē_0, ..., ē_d` with
    /// `P(n) = Σ_k (-1)^k ē_k C(n + d - 1 - k, d - k)`.
    pub fn standard_form(&self) -> Result<Vec<i64>> {
        // C(n+d-1-k, d-k) has degree d-k, so the change of basis is
        // triangular: peel off leading coefficients from the top.
        let d = self.d as usize;
        let mut remainder = self.coefficients.clone();
        let mut out = vec![0i64; d + 1];
        for k in 0..=d {
            // leading coefficient in the C(n, d-k) basis
            let lead = remainder[k];
            let sign = if k % 2 == 0 { 1 } else { -1 };
            out[k] = sign * lead;
            // C(n + d-1-k, d-k) = Σ_t C(d-1-k, t) C(n, d-k-t)   (Vandermonde)
            if d > k {
                let shift = (d - 1 - k) as u64;
                for t in 0..=shift.min((d - k) as u64) {
                    let c = binomial(shift, t)? as i64;
                    let idx = k + t as usize;
                    remainder[idx] = remainder[idx]
                        .checked_sub(
                            lead.checked_mul(c)
                                .ok_or(Error::Overflow("standard form"))?,
                        )
                        .ok_or(Error::Overflow("standard form"))?;
                }
            } else {
                remainder[k] -= lead;
            }
        }
        Ok(out)
    }
}

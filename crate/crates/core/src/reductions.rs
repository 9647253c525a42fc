//! Verification of reductions, complete reductions and joint reductions
//! with monomial witnesses.
//!
//! Nothing here searches for reductions; callers supply candidates and get
//! back a certificate saying whether the defining equation holds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, default_var_names};

pub const DEFAULT_R_MAX: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Reduction,
    Complete,
    JointZero,
    Decomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    pub kind: CertificateKind,
    /// The reduction number, when the equation was attained.
    pub witness_r: Option<u32>,
    pub holds: bool,
    pub checked_up_to: u32,
}

/// One summand `(m) I^{a_i} J^{b_i}` of a decomposition of `I^a J^b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTerm {
    pub monomial: Monomial,
    pub degree: (u32, u32),
}

impl DecompositionTerm {
    pub fn new(monomial: Monomial, degree: (u32, u32)) -> Self {
        DecompositionTerm { monomial, degree }
    }
}

fn not_contained(m: &Monomial, container: &str) -> Error {
    let names = default_var_names(m.nvars());
    Error::NotContained {
        what: m.display_with(&names).to_string(),
        container: container.to_string(),
    }
}

fn same_dims(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<()> {
    if i.nvars() != j.nvars() {
        return Err(Error::DimensionMismatch {
            expected: i.nvars(),
            found: j.nvars(),
        });
    }
    Ok(())
}

/// Finds the least `r ≤ r_max` with `I^{r+1} = K I^r`.
pub fn is_reduction(
    k: &MonomialIdeal,
    i: &MonomialIdeal,
    r_max: u32,
) -> Result<ReductionCertificate> {
    reduction_certificate(k, i, r_max, CertificateKind::Reduction)
}

fn reduction_certificate(
    k: &MonomialIdeal,
    i: &MonomialIdeal,
    r_max: u32,
    kind: CertificateKind,
) -> Result<ReductionCertificate> {
    same_dims(k, i)?;
    if r_max == 0 {
        return Err(Error::InvalidConfig("r_max must be positive".into()));
    }
    if let Some(g) = k.generators().iter().find(|g| !i.contains(g)) {
        return Err(not_contained(g, "I"));
    }
    let mut ir = MonomialIdeal::unit(i.nvars());
    for r in 0..=r_max {
        let next = ir.product(i)?;
        if k.product(&ir)? == next {
            return Ok(ReductionCertificate {
                kind,
                witness_r: Some(r),
                holds: true,
                checked_up_to: r,
            });
        }
        ir = next;
    }
    Ok(ReductionCertificate {
        kind,
        witness_r: None,
        holds: false,
        checked_up_to: r_max,
    })
}

/// Checks `Σ (m_i) I^{a_i} J^{b_i} = I^a J^b`.
///
/// Each multiplier must lie in the complementary power
/// `I^{a - a_i} J^{b - b_i}`; a term violating this is reported by index.
pub fn verify_decomposition(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    target: (u32, u32),
    terms: &[DecompositionTerm],
) -> Result<bool> {
    same_dims(i, j)?;
    let (a, b) = target;
    let names = default_var_names(i.nvars());
    let mut sum = MonomialIdeal::zero(i.nvars());
    for (idx, term) in terms.iter().enumerate() {
        let (ai, bi) = term.degree;
        if ai > a || bi > b {
            return Err(Error::InvalidConfig(format!(
                "term {idx}: degree ({ai},{bi}) exceeds target ({a},{b})"
            )));
        }
        let complement = i.power(a - ai).product(&j.power(b - bi))?;
        if term.monomial.nvars() != i.nvars() {
            return Err(Error::DimensionMismatch {
                expected: i.nvars(),
                found: term.monomial.nvars(),
            });
        }
        if !complement.contains(&term.monomial) {
            return Err(Error::NotContained {
                what: format!(
                    "term {idx} multiplier {}",
                    term.monomial.display_with(&names)
                ),
                container: format!("I^{}J^{}", a - ai, b - bi),
            });
        }
        let summand = i.power(ai).product(&j.power(bi))?.scale(&term.monomial)?;
        sum = sum.sum(&summand)?;
    }
    Ok(sum == i.power(a).product(&j.power(b))?)
}

/// `xJ + yI = IJ` for `x ∈ I`, `y ∈ J`.
pub fn joint_reduction_zero(
    x: &Monomial,
    y: &Monomial,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
) -> Result<bool> {
    same_dims(i, j)?;
    if !i.contains(x) {
        return Err(not_contained(x, "I"));
    }
    if !j.contains(y) {
        return Err(not_contained(y, "J"));
    }
    verify_decomposition(
        i,
        j,
        (1, 1),
        &[
            DecompositionTerm::new(x.clone(), (0, 1)),
            DecompositionTerm::new(y.clone(), (1, 0)),
        ],
    )
}

/// Forms `y_k = x_k x'_k` from pairs `(x_k ∈ I, x'_k ∈ J)` and checks that
/// `(y_1, ..., y_d)` is a reduction of `IJ`.
pub fn complete_reduction_check(
    pairs: &[(Monomial, Monomial)],
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    r_max: u32,
) -> Result<ReductionCertificate> {
    same_dims(i, j)?;
    if pairs.len() != i.nvars() {
        return Err(Error::InvalidConfig(format!(
            "a complete reduction needs {} pairs, got {}",
            i.nvars(),
            pairs.len()
        )));
    }
    for (x, y) in pairs {
        if !i.contains(x) {
            return Err(not_contained(x, "I"));
        }
        if !j.contains(y) {
            return Err(not_contained(y, "J"));
        }
    }
    let ys = complete_reduction_products(pairs);
    let k = MonomialIdeal::minimalize(i.nvars(), ys)?;
    reduction_certificate(&k, &i.product(j)?, r_max, CertificateKind::Complete)
}

/// The products `y_k` of a complete reduction, in input order.
pub fn complete_reduction_products(pairs: &[(Monomial, Monomial)]) -> Vec<Monomial> {
    pairs.iter().map(|(x, y)| x.mul(y)).collect()
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

    fn colength16() -> MonomialIdeal {
        ideal(&[&[3, 0], &[2, 4], &[1, 5], &[0, 7]])
    }

    #[test]
    fn pure_powers_reduce_with_number_two() {
        let k = ideal(&[&[3, 0], &[0, 7]]);
        let i = colength16();
        let cert = is_reduction(&k, &i, DEFAULT_R_MAX).unwrap();
        assert!(cert.holds);
        // JI^2 = I^3 while I^2 != JI
        assert_eq!(cert.witness_r, Some(2));
        assert_ne!(k.product(&i).unwrap(), i.power(2));
        assert_eq!(k.product(&i.power(2)).unwrap(), i.power(3));
        // λ(I^2 / JI) = 1
        let ji = k.product(&i).unwrap();
        assert_eq!(ji.colength().unwrap() - i.power(2).colength().unwrap(), 1);
    }

    #[test]
    fn three_var_reduction_number_one() {
        let k = ideal(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
        let i = ideal(&[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 0, 1]]);
        let cert = is_reduction(&k, &i, DEFAULT_R_MAX).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.witness_r, Some(1));
        assert!(cert.witness_r.unwrap() <= cert.checked_up_to);
    }

    #[test]
    fn ideal_reduces_itself() {
        let cert = is_reduction(&colength16(), &colength16(), 3).unwrap();
        assert_eq!(cert.witness_r, Some(0));
    }

    #[test]
    fn non_reduction_reports_failure() {
        // (x^3, y^3) does not reduce (x^3, x y, y^3): x y is not integral over it
        let k = ideal(&[&[3, 0], &[0, 3]]);
        let i = ideal(&[&[3, 0], &[1, 1], &[0, 3]]);
        let cert = is_reduction(&k, &i, 4).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.checked_up_to, 4);
        assert_eq!(cert.witness_r, None);
    }

    #[test]
    fn reduction_must_be_contained() {
        let k = ideal(&[&[1, 0], &[0, 7]]);
        assert_eq!(
            is_reduction(&k, &colength16(), 3).unwrap_err().code(),
            "E_NOT_CONTAINED"
        );
    }

    #[test]
    fn decomposition_examples() {
        let i = ideal(&[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 0, 1]]);
        let j = ideal(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 1]]);
        let x = mono(&[1, 0, 0]);
        let z = mono(&[0, 0, 1]);
        let y2 = mono(&[0, 2, 0]);
        let first = [
            DecompositionTerm::new(x.clone(), (1, 0)),
            DecompositionTerm::new(z.clone(), (1, 0)),
            DecompositionTerm::new(y2.clone(), (0, 1)),
        ];
        assert!(verify_decomposition(&i, &j, (1, 1), &first).unwrap());
        let second = [
            DecompositionTerm::new(x, (1, 0)),
            DecompositionTerm::new(y2.clone(), (0, 1)),
            DecompositionTerm::new(z, (0, 1)),
        ];
        assert!(verify_decomposition(&i, &j, (1, 1), &second).unwrap());
        // dropping a term breaks equality
        assert!(!verify_decomposition(&i, &j, (1, 1), &second[..2]).unwrap());

        let m = MonomialIdeal::maximal(2);
        let terms = [
            DecompositionTerm::new(mono(&[1, 0]), (0, 1)),
            DecompositionTerm::new(mono(&[0, 1]), (1, 0)),
        ];
        assert!(verify_decomposition(&m, &m, (1, 1), &terms).unwrap());
    }

    #[test]
    fn decomposition_rejects_bad_multiplier() {
        let m = MonomialIdeal::maximal(2);
        let terms = [
            DecompositionTerm::new(mono(&[1, 0]), (0, 1)),
            DecompositionTerm::new(mono(&[0, 0]), (1, 0)),
        ];
        let err = verify_decomposition(&m, &m, (1, 1), &terms).unwrap_err();
        match err {
            Error::NotContained { what, .. } => assert!(what.starts_with("term 1")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn joint_reduction_examples() {
        let m = MonomialIdeal::maximal(2);
        assert!(joint_reduction_zero(&mono(&[1, 0]), &mono(&[0, 1]), &m, &m).unwrap());
        assert!(joint_reduction_zero(&mono(&[3, 0]), &mono(&[0, 1]), &colength16(), &m).unwrap());
        // y m + x J = m J for J = (x^2, y)
        let j = ideal(&[&[2, 0], &[0, 1]]);
        assert!(joint_reduction_zero(&mono(&[1, 0]), &mono(&[0, 1]), &m, &j).unwrap());
        // brute oracle: expand both sides explicitly
        let lhs = j
            .scale(&mono(&[1, 0]))
            .unwrap()
            .sum(&m.scale(&mono(&[0, 1])).unwrap())
            .unwrap();
        assert_eq!(lhs, m.product(&j).unwrap());
        // y J + x^2 m misses x y
        let swapped = joint_reduction_zero(&mono(&[0, 1]), &mono(&[2, 0]), &m, &j).unwrap();
        assert!(!swapped);
    }

    #[test]
    fn complete_reduction_examples() {
        let m = MonomialIdeal::maximal(2);
        let pairs = [
            (mono(&[1, 0]), mono(&[1, 0])),
            (mono(&[0, 1]), mono(&[0, 1])),
        ];
        let cert = complete_reduction_check(&pairs, &m, &m, DEFAULT_R_MAX).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.kind, CertificateKind::Complete);

        let pairs = [
            (mono(&[3, 0]), mono(&[1, 0])),
            (mono(&[0, 7]), mono(&[0, 1])),
        ];
        let cert = complete_reduction_check(&pairs, &colength16(), &m, DEFAULT_R_MAX).unwrap();
        let k = ideal(&[&[4, 0], &[0, 8]]);
        let direct = is_reduction(&k, &colength16().product(&m).unwrap(), DEFAULT_R_MAX).unwrap();
        assert_eq!(cert.holds, direct.holds);
        assert_eq!(cert.witness_r, direct.witness_r);
        // x^3 y in IJ lies below the Newton line of (x^4, y^8)
        assert!(!cert.holds);

        let bad = [
            (mono(&[1, 0]), mono(&[1, 0])),
            (mono(&[0, 7]), mono(&[0, 1])),
        ];
        assert_eq!(
            complete_reduction_check(&bad, &colength16(), &m, 3)
                .unwrap_err()
                .code(),
            "E_NOT_CONTAINED"
        );
    }
}

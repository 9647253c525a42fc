mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rees_core::bhattacharya::Bhattacharya;
use rees_core::closure::rr_component;
use rees_core::reductions::DEFAULT_R_MAX;
use rees_core::*;

fn ideal2() -> impl Strategy<Value = MonomialIdeal> {
    any::<u64>().prop_map(|seed| random_m_primary(&mut ChaCha8Rng::seed_from_u64(seed), 2, 5, 4))
}

fn ideal3() -> impl Strategy<Value = MonomialIdeal> {
    any::<u64>().prop_map(|seed| random_m_primary(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4, 4))
}

fn monomial(n: usize, max: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max, n).prop_map(Monomial::new)
}

fn all_in_box(n: usize, side: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::new(vec![])];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..side).map(move |e| {
                    let mut v = m.exponents().to_vec();
                    v.push(e);
                    Monomial::new(v)
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_closed_under_multiples(i in ideal2(), j in ideal2(), m in monomial(2, 6), t in monomial(2, 3)) {
        for id in [i.sum(&j).unwrap(), i.product(&j).unwrap(), i.intersect(&j).unwrap(), i.power(2)] {
            if id.contains(&m) {
                prop_assert!(id.contains(&m.mul(&t)));
            }
        }
    }

    #[test]
    fn generators_are_minimal(i in ideal2(), j in ideal2()) {
        let p = i.product(&j).unwrap();
        let g = p.generators();
        for a in g {
            for b in g {
                prop_assert!(a == b || !a.divides(b));
            }
        }
    }

    #[test]
    fn product_colength_dominates(i in ideal2(), j in ideal2()) {
        let ij = i.product(&j).unwrap().colength().unwrap();
        prop_assert!(ij >= i.colength().unwrap().max(j.colength().unwrap()));
    }

    #[test]
    fn colon_times_monomial_lands_in_ideal(i in ideal2(), m in monomial(2, 4)) {
        let c = i.colon(&MonomialIdeal::principal(m.clone())).unwrap();
        prop_assert!(c.scale(&m).unwrap().is_subset_of(&i));
        prop_assert!(i.is_subset_of(&c));
    }

    #[test]
    fn colon_membership_matches_definition(i in ideal2(), j in ideal2()) {
        let c = i.colon(&j).unwrap();
        for m in all_in_box(2, 7) {
            let expected = j.generators().iter().all(|g| i.contains(&m.mul(g)));
            prop_assert_eq!(c.contains(&m), expected);
        }
    }

    #[test]
    fn intersection_membership(i in ideal2(), j in ideal2()) {
        let k = i.intersect(&j).unwrap();
        for m in all_in_box(2, 8) {
            prop_assert_eq!(k.contains(&m), i.contains(&m) && j.contains(&m));
        }
    }

    #[test]
    fn colength_matches_inclusion_exclusion_2(i in ideal2(), j in ideal2()) {
        for id in [i.clone(), i.product(&j).unwrap(), i.sum(&j).unwrap()] {
            prop_assert_eq!(id.colength().unwrap(), colength_inclusion_exclusion(&id));
        }
    }

    #[test]
    fn colength_matches_inclusion_exclusion_3(i in ideal3(), j in ideal3()) {
        let p = i.product(&j).unwrap();
        prop_assert_eq!(p.colength().unwrap(), colength_inclusion_exclusion(&p));
        prop_assert_eq!(i.colength().unwrap(), colength_inclusion_exclusion(&i));
    }

    #[test]
    fn equality_iff_mutual_containment(i in ideal2(), j in ideal2()) {
        let both = i.is_subset_of(&j) && j.is_subset_of(&i);
        prop_assert_eq!(i == j, both);
        let s = i.sum(&j).unwrap();
        prop_assert!(i.is_subset_of(&s) && j.is_subset_of(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_chain_ascends_and_closure_is_idempotent(
        i in ideal2(), j in ideal2(), a in 0u32..3, b in 0u32..3
    ) {
        let base = i.power(a).product(&j.power(b)).unwrap();
        let mut prev = base.clone();
        for k in 0..4 {
            let c = rr_component(&i, &j, a, b, k).unwrap();
            prop_assert!(prev.is_subset_of(&c));
            prev = c;
        }
        let cfg = ClosureConfig::default();
        let res = rr_closure(&i, &j, a, b, cfg).unwrap();
        prop_assert!(!res.capped);
        prop_assert!(base.is_subset_of(&res.closure));
        let defect = rr_defect(&i, &j, a, b, cfg).unwrap().defect;
        prop_assert_eq!(base.colength().unwrap() - res.closure.colength().unwrap(), defect);
        let unit = MonomialIdeal::unit(2);
        let single = rr_closure(&i, &unit, 1, 0, cfg).unwrap().closure;
        prop_assert_eq!(rr_closure(&single, &unit, 1, 0, cfg).unwrap().closure, single.clone());
        prop_assert!(i.is_subset_of(&single));
    }

    #[test]
    fn reduction_persists_past_witness(i in ideal2()) {
        let pure = MonomialIdeal::minimalize(2, i.pure_power_generators()).unwrap();
        let cert = is_reduction(&pure, &i, DEFAULT_R_MAX).unwrap();
        if let Some(r) = cert.witness_r {
            for t in r..r + 3 {
                prop_assert_eq!(i.power(t + 1), pure.product(&i.power(t)).unwrap());
            }
        }
    }

    #[test]
    fn decomposition_monotone_in_terms(i in ideal2(), j in ideal2(), x in monomial(2, 5), y in monomial(2, 5)) {
        let target = (1, 1);
        let one = vec![DecompositionTerm::new(x.clone(), (0, 1))];
        let two = vec![
            DecompositionTerm::new(x.clone(), (0, 1)),
            DecompositionTerm::new(y.clone(), (1, 0)),
        ];
        let r1 = verify_decomposition(&i, &j, target, &one);
        let r2 = verify_decomposition(&i, &j, target, &two);
        if let (Ok(a), Ok(b)) = (r1, r2) {
            prop_assert!(!a || b);
        }
    }

    #[test]
    fn joint_reduction_wrapper_agrees(i in ideal2(), j in ideal2(), x in monomial(2, 5), y in monomial(2, 5)) {
        let target = (1, 1);
        let terms = vec![
            DecompositionTerm::new(x.clone(), (0, 1)),
            DecompositionTerm::new(y.clone(), (1, 0)),
        ];
        let direct = verify_decomposition(&i, &j, target, &terms);
        let wrapped = joint_reduction_zero(&x, &y, &i, &j);
        match (direct, wrapped) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(a), Err(b)) => prop_assert_eq!(a.code(), b.code()),
            (a, b) => prop_assert!(false, "disagreement: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn fit_is_integral_symmetric_and_correct(i in ideal2(), j in ideal2()) {
        let f = fit(&i, &j, FitOptions::default()).unwrap();
        let g = fit(&j, &i, FitOptions::default()).unwrap();
        for (a, b) in BinomialPolynomial2::index_set(2) {
            prop_assert_eq!(f.polynomial.coeff(a, b), g.polynomial.coeff(b, a));
        }
        let w = f.validated_on;
        let mut eng = Bhattacharya::new(&i, &j).unwrap();
        for (r, s) in w.points() {
            prop_assert_eq!(f.polynomial.eval(r, s).unwrap(), eng.value(r, s).unwrap() as i128);
        }
        let mm = mixed_multiplicities(&i, &j).unwrap();
        prop_assert_eq!(mm, f.polynomial.top_degree());
    }

    #[test]
    fn diagonal_pair_reduces_to_single_hilbert(i in ideal2()) {
        let f = fit(&i, &i, FitOptions::default()).unwrap();
        let h = hilbert_fit_single(&i).unwrap();
        for r in 0..5 {
            for s in 0..5 {
                prop_assert_eq!(f.polynomial.eval(r, s).unwrap(), h.polynomial.eval(r + s).unwrap());
            }
        }
    }

    #[test]
    fn coefficient_inequalities(i in ideal2(), j in ideal2()) {
        let mut pa = PairAnalysis::new(&i, &j, FitOptions::default(), ClosureConfig::default()).unwrap();
        let audit = pa.inequality_audit().unwrap();
        prop_assert!(audit.len_i as i64 >= audit.bound_i);
        prop_assert!(audit.len_j as i64 >= audit.bound_j);
        let mixed = pa.e1_mixed_identity_check().unwrap();
        prop_assert!(mixed.e11 >= mixed.colength_difference);
        prop_assert!(pa.e00_identity_check().unwrap());
    }

    #[test]
    fn bhattacharya_monotone(i in ideal2(), j in ideal2()) {
        let t = table(&i, &j, Window::from_origin(4, 4)).unwrap();
        for r in 0..=4 {
            for s in 0..=4 {
                let v = t.get(r, s).unwrap();
                if r < 4 { prop_assert!(t.get(r + 1, s).unwrap() >= v); }
                if s < 4 { prop_assert!(t.get(r, s + 1).unwrap() >= v); }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn one_variable_inequalities(a in 1u32..6, b in 1u32..6) {
        let i = MonomialIdeal::from_exponents(1, &[&[a]]).unwrap();
        let j = MonomialIdeal::from_exponents(1, &[&[b]]).unwrap();
        let mut pa = PairAnalysis::new(&i, &j, FitOptions::default(), ClosureConfig::default()).unwrap();
        let audit = pa.inequality_audit().unwrap();
        prop_assert!(audit.len_i as i64 >= audit.bound_i);
        prop_assert!(audit.len_j as i64 >= audit.bound_j);
    }
}

#![allow(dead_code)]

use rand::Rng;
use rees_core::{Monomial, MonomialIdeal};

pub fn ideal(exps: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(exps[0].len(), exps).unwrap()
}

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

pub fn m2() -> MonomialIdeal {
    MonomialIdeal::maximal(2)
}

/// (x^3, x^2 y^4, x y^5, y^7), colength 16.
pub fn colength16() -> MonomialIdeal {
    ideal(&[&[3, 0], &[2, 4], &[1, 5], &[0, 7]])
}

/// Jacobian ideal of y^2 - x^n.
pub fn jacobian(n: u32) -> MonomialIdeal {
    ideal(&[&[n - 1, 0], &[0, 1]])
}

/// (x^4, x^3 y, x y^3, y^4), whose Ratliff-Rush closure contains x^2 y^2.
pub fn non_rr() -> MonomialIdeal {
    ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]])
}

pub fn three_var_pair() -> (MonomialIdeal, MonomialIdeal) {
    (
        ideal(&[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 0, 1]]),
        ideal(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 1]]),
    )
}

/// Colength by inclusion-exclusion over generator subsets: the box
/// `Π [0, a_i)` minus the union of the shifted orthants `g + N^n`.
pub fn colength_inclusion_exclusion(i: &MonomialIdeal) -> u64 {
    let n = i.nvars();
    let gens = i.generators();
    let bounds: Vec<i64> = (0..n)
        .map(|v| i.pure_power_exponent(v).unwrap() as i64)
        .collect();
    let cells_above = |l: &[u32]| -> i64 {
        bounds
            .iter()
            .zip(l)
            .map(|(&a, &e)| (a - e as i64).max(0))
            .product()
    };
    let mut total: i64 = 0;
    for mask in 0u64..(1u64 << gens.len()) {
        let mut l = vec![0u32; n];
        for (k, g) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (x, &e) in l.iter_mut().zip(g.exponents()) {
                    *x = (*x).max(e);
                }
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        total += sign * cells_above(&l);
    }
    total as u64
}

/// Colength by testing every cell of a box against the raw generator list.
pub fn colength_brute(gens: &[Monomial], bounds: &[u32]) -> u64 {
    let mut count = 0;
    let mut cell = vec![0u32; bounds.len()];
    loop {
        let m = Monomial::new(cell.clone());
        if !gens.iter().any(|g| g.divides(&m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == bounds.len() {
                return count;
            }
            cell[k] += 1;
            if cell[k] < bounds[k] {
                break;
            }
            cell[k] = 0;
            k += 1;
        }
    }
}

/// A random m-primary monomial ideal in `n` variables whose pure powers
/// have exponents in `1..=max_exp`, with up to `extra` mixed generators.
pub fn random_m_primary<R: Rng>(
    rng: &mut R,
    n: usize,
    max_exp: u32,
    extra: usize,
) -> MonomialIdeal {
    let pure: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_exp)).collect();
    let mut gens: Vec<Monomial> = (0..n)
        .map(|v| {
            let mut e = vec![0; n];
            e[v] = pure[v];
            Monomial::new(e)
        })
        .collect();
    for _ in 0..rng.gen_range(0..=extra) {
        let e: Vec<u32> = pure.iter().map(|&a| rng.gen_range(0..a)).collect();
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        gens.push(Monomial::new(e));
    }
    MonomialIdeal::minimalize(n, gens).unwrap()
}

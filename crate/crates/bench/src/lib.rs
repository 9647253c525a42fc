//! Fixture ideals shared by the benchmarks.

use rees_core::MonomialIdeal;

fn ideal(exps: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(exps[0].len(), exps).expect("fixture exponents")
}

/// `(x^3, x^2 y^4, x y^5, y^7)`.
pub fn colength16() -> MonomialIdeal {
    ideal(&[&[3, 0], &[2, 4], &[1, 5], &[0, 7]])
}

/// `(x^4, x^3 y, x y^3, y^4)`.
pub fn non_rr() -> MonomialIdeal {
    ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]])
}

/// `(x^2, xy, y^2, z)` and `(x, y^3, z)`.
pub fn three_var_pair() -> (MonomialIdeal, MonomialIdeal) {
    (
        ideal(&[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 0, 1]]),
        ideal(&[&[1, 0, 0], &[0, 3, 0], &[0, 0, 1]]),
    )
}

/// The staircase `(x^n, x^{n-1} y, ..., y^n)` with its inner corners
/// pushed out by one, a generator count that grows with `n`.
pub fn staircase(n: u32) -> MonomialIdeal {
    let gens: Vec<Vec<u32>> = (0..=n).map(|k| vec![n - k, k + (k % 2)]).collect();
    let refs: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
    ideal(&refs)
}

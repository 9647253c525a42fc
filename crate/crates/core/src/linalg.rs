//! Exact Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Outcome of solving an (over)determined system `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    Inconsistent,
    /// The columns of `A` are linearly dependent.
    RankDeficient,
}

/// Solves `A x = b` exactly, where `A` has at least as many rows as columns.
pub fn solve(matrix: &[Vec<BigInt>], rhs: &[BigInt]) -> Solution {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    assert_eq!(rows, rhs.len());

    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .chain(std::iter::once(b))
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            return Solution::RankDeficient;
        };
        aug.swap(pivot_row, p);
        let inv = BigRational::one() / aug[pivot_row][col].clone();
        for v in aug[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r == pivot_row || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            let pivot = aug[pivot_row].clone();
            for (v, p) in aug[r].iter_mut().zip(&pivot).skip(col) {
                *v -= &factor * p;
            }
        }
        pivot_row += 1;
    }

    // rows past the pivots must reduce to 0 = 0
    if aug[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    Solution::Unique((0..cols).map(|c| aug[c][cols].clone()).collect())
}

//! Monomials and monomial ideals of `k[x_1, ..., x_n]` localized at the
//! maximal ideal.
//!
//! Ideals are stored by their minimal generating set in a canonical order
//! (descending lexicographic on exponent vectors), so two ideals are equal
//! exactly when their generator lists are equal. Lengths of quotients by
//! m-primary monomial ideals are counts of standard monomials, which makes
//! every computation here independent of the coefficient field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ceiling on the number of cells visited by [`MonomialIdeal::colength`].
pub const DEFAULT_BOX_LIMIT: u128 = 1 << 32;

/// Grid size above which `colon` falls back to iterated intersections.
const DENSE_COLON_LIMIT: usize = 1 << 22;

/// A monomial `x_1^{a_1} ... x_n^{a_n}`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `n` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_i` in `n` variables.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&a| a * k).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// `lcm(self, m) / m`, the generator of `(self) : (m)`.
    pub fn colon(&self, m: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&m.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    /// If this monomial is `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Renders the monomial with the given variable names, e.g. `x^2*y^4`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, names }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Default variable names: `x, y, z` for up to three variables, otherwise
/// `x1, ..., xn`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars());
        write!(f, "{}", self.display_with(&names))
    }
}

/// A monomial ideal given by its minimal generating set.
///
/// The unit ideal is generated by the monomial `1`; the zero ideal has no
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, dropping redundant generators.
    pub fn minimalize<I>(nvars: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        Ok(Self::minimalize_unchecked(nvars, gens))
    }

    fn minimalize_unchecked(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        // A divisor never has larger total degree, so after sorting by degree
        // each candidate only needs to be tested against the kept prefix.
        gens.sort_unstable_by_key(|g| g.degree());
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort_unstable_by(|a, b| b.cmp(a));
        MonomialIdeal { nvars, gens: kept }
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents(nvars: usize, exps: &[&[u32]]) -> Result<Self> {
        Self::minimalize(nvars, exps.iter().map(|e| Monomial::new(e.to_vec())))
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Self {
        Self::minimalize_unchecked(nvars, (0..nvars).map(|i| Monomial::var(i, nvars)).collect())
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            nvars: m.nvars(),
            gens: vec![m],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.mul(h));
            }
        }
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// `(m) * I`.
    pub fn scale(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(m)?;
        // Multiplying by a monomial preserves minimality and the order.
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: self.gens.iter().map(|g| g.mul(m)).collect(),
        })
    }

    /// `I^r` by repeated multiplication, minimalizing after every step.
    pub fn power(&self, r: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..r {
            acc = acc
                .product(self)
                .expect("same ambient dimension by construction");
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.lcm(h));
            }
        }
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// `I : (m)`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_monomial(m)?;
        let gens = self.gens.iter().map(|g| g.colon(m)).collect();
        Ok(Self::minimalize_unchecked(self.nvars, gens))
    }

    /// `I : J`, the intersection of `I : (m)` over the generators `m` of `J`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        if other.is_zero() {
            return Err(Error::ColonByZero);
        }
        if let Some(c) = self.dense_colon(other) {
            return Ok(c);
        }
        let mut gens = other.gens.iter();
        let first = gens.next().ok_or(Error::ColonByZero)?;
        let mut acc = self.colon_monomial(first)?;
        for m in gens {
            acc = acc.intersect(&self.colon_monomial(m)?)?;
        }
        Ok(acc)
    }

    /// `I : J` for m-primary `I` on the grid `Π [0, a_i]`. The standard
    /// monomials of the colon are the union of `std(I) - g` over the
    /// generators `g` of `J`; its generators are the corners of that set.
    fn dense_colon(&self, other: &MonomialIdeal) -> Option<MonomialIdeal> {
        if self.is_unit() || !self.is_m_primary() {
            return None;
        }
        let n = self.nvars;
        let dims: Vec<usize> = (0..n)
            .map(|i| self.pure_power_exponent(i).map(|a| a as usize + 1))
            .collect::<Option<_>>()?;
        let cells = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&c| c <= DENSE_COLON_LIMIT)?;
        let mut stride = vec![1usize; n];
        for i in (0..n - 1).rev() {
            stride[i] = stride[i + 1] * dims[i + 1];
        }
        let index =
            |e: &[u32]| -> usize { e.iter().zip(&stride).map(|(&x, &s)| x as usize * s).sum() };
        let step = |coord: &mut [usize]| {
            for k in (0..n).rev() {
                coord[k] += 1;
                if coord[k] < dims[k] {
                    return;
                }
                coord[k] = 0;
            }
        };

        let mut in_ideal = vec![false; cells];
        for g in &self.gens {
            in_ideal[index(g.exponents())] = true;
        }
        let mut coord = vec![0usize; n];
        for idx in 0..cells {
            if !in_ideal[idx] {
                in_ideal[idx] = (0..n).any(|k| coord[k] > 0 && in_ideal[idx - stride[k]]);
            }
            step(&mut coord);
        }

        let mut standard = vec![false; cells];
        let mut coord = vec![0usize; n];
        for idx in 0..cells {
            if !in_ideal[idx] {
                for g in &other.gens {
                    let e = g.exponents();
                    if e.iter().zip(&coord).all(|(&x, &c)| x as usize <= c) {
                        standard[idx - index(e)] = true;
                    }
                }
            }
            step(&mut coord);
        }

        let mut gens = Vec::new();
        let mut coord = vec![0usize; n];
        for idx in 0..cells {
            let corner =
                !standard[idx] && (0..n).all(|k| coord[k] == 0 || standard[idx - stride[k]]);
            if corner {
                gens.push(Monomial::new(coord.iter().map(|&c| c as u32).collect()));
            }
            step(&mut coord);
        }
        gens.sort_unstable_by(|a, b| b.cmp(a));
        Some(MonomialIdeal { nvars: n, gens })
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// True iff every variable has a pure power among the generators.
    pub fn is_m_primary(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        (0..self.nvars).all(|i| self.pure_power_exponent(i).is_some())
    }

    /// Smallest `a` with `x_i^a` in the ideal, if any.
    pub fn pure_power_exponent(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| {
                g.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| j == i || e == 0)
            })
            .map(|g| g.exponents()[i])
            .min()
    }

    /// The pure-power generators `x_i^{a_i}`, one per variable that has one.
    pub fn pure_power_generators(&self) -> Vec<Monomial> {
        (0..self.nvars)
            .filter_map(|i| {
                self.pure_power_exponent(i).map(|a| {
                    let mut e = vec![0; self.nvars];
                    e[i] = a;
                    Monomial::new(e)
                })
            })
            .collect()
    }

    /// The m-adic order: least total degree of a generator.
    pub fn order(&self) -> Option<u64> {
        self.gens.iter().map(Monomial::degree).min()
    }

    /// `λ(A/I)`, the number of monomials outside the ideal.
    pub fn colength(&self) -> Result<u64> {
        self.colength_with_limit(DEFAULT_BOX_LIMIT)
    }

    /// [`colength`](Self::colength) with an explicit ceiling on the number
    /// of enumerated cells.
    ///
    /// The enumeration walks the box `Π [0, a_i)` spanned by the pure powers
    /// over all but the last coordinate; along the last axis the run of
    /// standard monomials above each prefix is read off from the smallest
    /// last exponent among generators dividing that prefix.
    pub fn colength_with_limit(&self, limit: u128) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        if !self.is_m_primary() || self.nvars == 0 {
            return Err(Error::InfiniteColength);
        }
        let n = self.nvars;
        let bounds: Vec<u32> = (0..n)
            .map(|i| self.pure_power_exponent(i).expect("m-primary"))
            .collect();
        let last = n - 1;
        let outer = &bounds[..last];
        let cells = outer
            .iter()
            .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128))
            .ok_or(Error::Overflow("box size"))?;
        if cells > limit {
            return Err(Error::BoxTooLarge { cells, limit });
        }

        let mut prefix = vec![0u32; last];
        let mut total: u64 = 0;
        loop {
            let height = self
                .gens
                .iter()
                .filter(|g| {
                    g.exponents()[..last]
                        .iter()
                        .zip(&prefix)
                        .all(|(a, b)| a <= b)
                })
                .map(|g| g.exponents()[last])
                .min()
                .expect("pure power of the last variable divides every prefix");
            total = total
                .checked_add(height as u64)
                .ok_or(Error::Overflow("colength"))?;

            // odometer increment over the outer box
            let mut i = 0;
            loop {
                if i == last {
                    return Ok(total);
                }
                prefix[i] += 1;
                if prefix[i] < outer[i] {
                    break;
                }
                prefix[i] = 0;
                i += 1;
            }
        }
    }

    /// Renders the generator list with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        IdealDisplay { ideal: self, names }
    }

    /// Generators rendered as strings, in canonical order.
    pub fn generator_strings(&self, names: &[String]) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| g.display_with(names).to_string())
            .collect()
    }
}

struct IdealDisplay<'a> {
    ideal: &'a MonomialIdeal,
    names: &'a [String],
}

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.ideal.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display_with(self.names))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

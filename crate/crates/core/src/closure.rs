//! Ratliff-Rush closures of products `I^a J^b`.
//!
//! The closure is the union of the ascending chain
//! `I^{a+k} J^{b+k} : I^k J^k`, `k = 0, 1, 2, ...`, or equivalently of
//! `I^{a+k} J^{b+k} : (y_1^k, ..., y_d^k)` for a reduction `(y_1, ..., y_d)`
//! of `IJ` coming from a complete reduction. No a-priori bound on `k` is
//! available, so the chain is declared stable once it repeats for
//! `confirm_steps` consecutive values and is flagged when `k_cap` is hit
//! first. Single-ideal closures are the case `J = (1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, default_var_names};
use crate::powers::ProductCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureConfig {
    pub confirm_steps: usize,
    pub k_cap: u32,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            confirm_steps: 2,
            k_cap: 20,
        }
    }
}

impl ClosureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.confirm_steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "confirm_steps must be at least 2, got {}",
                self.confirm_steps
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub closure: MonomialIdeal,
    /// First `k` of the final constant run of the chain.
    pub stabilized_at: u32,
    /// Length of that run.
    pub confirmed_steps: usize,
    /// The cap was reached before the run reached `confirm_steps`; the
    /// closure is then advisory only.
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RrDefect {
    /// `λ(closure / I^r J^s)`.
    pub defect: u64,
    pub capped: bool,
}

pub(crate) fn require_m_primary(ideal: &MonomialIdeal, label: &str) -> Result<()> {
    if ideal.is_m_primary() {
        Ok(())
    } else {
        let names = default_var_names(ideal.nvars());
        Err(Error::NotMPrimary(format!(
            "{label} = {}",
            ideal.display_with(&names)
        )))
    }
}

fn pair_cache(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<ProductCache> {
    require_m_primary(i, "I")?;
    require_m_primary(j, "J")?;
    ProductCache::new(i.clone(), j.clone())
}

/// `I^{a+k} J^{b+k} : I^k J^k`.
pub fn rr_component(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    a: u32,
    b: u32,
    k: u32,
) -> Result<MonomialIdeal> {
    let mut cache = pair_cache(i, j)?;
    component_cached(&mut cache, a, b, k)
}

fn component_cached(cache: &mut ProductCache, a: u32, b: u32, k: u32) -> Result<MonomialIdeal> {
    let big = cache.product(a + k, b + k);
    if k == 0 {
        return Ok(big);
    }
    big.colon(&cache.product(k, k))
}

/// Walks the ascending chain produced by `component` until it repeats
/// `confirm_steps` times in a row or `k_cap` is reached.
fn stabilize<F>(
    base: &MonomialIdeal,
    config: ClosureConfig,
    mut component: F,
) -> Result<ClosureResult>
where
    F: FnMut(u32) -> Result<MonomialIdeal>,
{
    config.validate()?;
    let mut current = component(0)?;
    if !base.is_subset_of(&current) {
        return Err(Error::InvariantViolated(
            "closure chain does not contain the product ideal".into(),
        ));
    }
    let mut run_start = 0;
    let mut run = 1;
    for k in 1..=config.k_cap {
        if run >= config.confirm_steps {
            break;
        }
        let next = component(k)?;
        if !current.is_subset_of(&next) {
            return Err(Error::InvariantViolated(format!(
                "closure chain is not ascending at k = {k}"
            )));
        }
        if next == current {
            run += 1;
        } else {
            run = 1;
            run_start = k;
            current = next;
        }
    }
    Ok(ClosureResult {
        closure: current,
        stabilized_at: run_start,
        confirmed_steps: run,
        capped: run < config.confirm_steps,
    })
}

/// The Ratliff-Rush closure of `I^a J^b` through the colons by `I^k J^k`.
pub fn rr_closure(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    a: u32,
    b: u32,
    config: ClosureConfig,
) -> Result<ClosureResult> {
    let mut cache = pair_cache(i, j)?;
    rr_closure_cached(&mut cache, a, b, config)
}

/// [`rr_closure`] against an existing product cache.
pub fn rr_closure_cached(
    cache: &mut ProductCache,
    a: u32,
    b: u32,
    config: ClosureConfig,
) -> Result<ClosureResult> {
    let base = cache.product(a, b);
    stabilize(&base, config, |k| component_cached(cache, a, b, k))
}

/// The Ratliff-Rush closure of `I^a J^b` through the colons by
/// `(y_1^k, ..., y_d^k)`.
///
/// The caller is responsible for `ys` generating a reduction of `IJ` (see
/// [`crate::reductions::complete_reduction_check`]); only membership in `IJ`
/// is checked here.
pub fn rr_closure_via_reduction(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    a: u32,
    b: u32,
    ys: &[Monomial],
    config: ClosureConfig,
) -> Result<ClosureResult> {
    let mut cache = pair_cache(i, j)?;
    let ij = cache.product(1, 1);
    let names = default_var_names(ij.nvars());
    for y in ys {
        if y.nvars() != ij.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ij.nvars(),
                found: y.nvars(),
            });
        }
        if !ij.contains(y) {
            return Err(Error::NotContained {
                what: y.display_with(&names).to_string(),
                container: "IJ".into(),
            });
        }
    }
    if ys.is_empty() {
        return Err(Error::InvalidConfig("empty reduction".into()));
    }
    let base = cache.product(a, b);
    stabilize(&base, config, |k| {
        let big = cache.product(a + k, b + k);
        if k == 0 {
            return Ok(big);
        }
        let powers = MonomialIdeal::minimalize(ij.nvars(), ys.iter().map(|y| y.pow(k)))?;
        big.colon(&powers)
    })
}

/// `λ((I^r J^s)~ / I^r J^s)`.
pub fn rr_defect(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    r: u32,
    s: u32,
    config: ClosureConfig,
) -> Result<RrDefect> {
    let mut cache = pair_cache(i, j)?;
    rr_defect_cached(&mut cache, r, s, config)
}

/// [`rr_defect`] against an existing product cache.
pub fn rr_defect_cached(
    cache: &mut ProductCache,
    r: u32,
    s: u32,
    config: ClosureConfig,
) -> Result<RrDefect> {
    let closure = rr_closure_cached(cache, r, s, config)?;
    let product = cache.product(r, s).colength()?;
    let closed = closure.closure.colength()?;
    let defect = product.checked_sub(closed).ok_or_else(|| {
        Error::InvariantViolated("closure has larger colength than the product".into())
    })?;
    Ok(RrDefect {
        defect,
        capped: closure.capped,
    })
}

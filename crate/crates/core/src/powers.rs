use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

/// Memoized products `I^r J^s` for a fixed pair of ideals.
///
/// Each product is built from a neighbouring cached cell (one more factor of
/// `I` or `J`) when one is available, so sweeping a window costs one small
/// multiplication per cell.
#[derive(Debug, Clone)]
pub struct ProductCache {
    i: MonomialIdeal,
    j: MonomialIdeal,
    i_powers: Vec<MonomialIdeal>,
    j_powers: Vec<MonomialIdeal>,
    cells: HashMap<(u32, u32), MonomialIdeal>,
}

impl ProductCache {
    pub fn new(i: MonomialIdeal, j: MonomialIdeal) -> Result<Self> {
        if i.nvars() != j.nvars() {
            return Err(Error::DimensionMismatch {
                expected: i.nvars(),
                found: j.nvars(),
            });
        }
        let unit = MonomialIdeal::unit(i.nvars());
        Ok(ProductCache {
            i,
            j,
            i_powers: vec![unit.clone()],
            j_powers: vec![unit],
            cells: HashMap::new(),
        })
    }

    pub fn first(&self) -> &MonomialIdeal {
        &self.i
    }

    pub fn second(&self) -> &MonomialIdeal {
        &self.j
    }

    pub fn nvars(&self) -> usize {
        self.i.nvars()
    }

    pub fn power_i(&mut self, r: u32) -> &MonomialIdeal {
        while self.i_powers.len() <= r as usize {
            let next = self.i_powers.last().unwrap().product(&self.i).unwrap();
            self.i_powers.push(next);
        }
        &self.i_powers[r as usize]
    }

    pub fn power_j(&mut self, s: u32) -> &MonomialIdeal {
        while self.j_powers.len() <= s as usize {
            let next = self.j_powers.last().unwrap().product(&self.j).unwrap();
            self.j_powers.push(next);
        }
        &self.j_powers[s as usize]
    }

    /// `I^r J^s`.
    pub fn product(&mut self, r: u32, s: u32) -> MonomialIdeal {
        if let Some(p) = self.cells.get(&(r, s)) {
            return p.clone();
        }
        let p = if s > 0 && self.cells.contains_key(&(r, s - 1)) {
            self.cells[&(r, s - 1)].product(&self.j).unwrap()
        } else if r > 0 && self.cells.contains_key(&(r - 1, s)) {
            self.cells[&(r - 1, s)].product(&self.i).unwrap()
        } else {
            let ir = self.power_i(r).clone();
            ir.product(self.power_j(s)).unwrap()
        };
        self.cells.insert((r, s), p.clone());
        p
    }
}

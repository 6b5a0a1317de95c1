use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use super::{BettiVector, Multiplicities, RankProfile};
use crate::algebra::IntPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompEntry {
    pub k: usize,
    pub i: usize,
    #[serde(with = "crate::bigjson")]
    pub mult: BigUint,
}

/// Multiplicities of `h(X^k)(i)` in `h(X[n])`. Entries are kept sorted by
/// `k` descending, then `i` ascending, and zero entries are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct DecompTable {
    n: usize,
    d: usize,
    entries: Vec<DecompEntry>,
}

#[derive(Deserialize)]
struct RawTable {
    n: usize,
    d: usize,
    entries: Vec<DecompEntry>,
}

impl TryFrom<RawTable> for DecompTable {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self> {
        let mut map = Multiplicities::new();
        for e in raw.entries {
            if e.k == 0 || e.k > raw.n {
                return Err(Error::InvalidInput(format!("entry with k = {} for n = {}", e.k, raw.n)));
            }
            if map.insert((e.k, e.i), e.mult).is_some() {
                return Err(Error::InvalidInput(format!("duplicate entry (k={}, i={})", e.k, e.i)));
            }
        }
        Ok(DecompTable::from_entries(raw.n, raw.d, map))
    }
}

fn sort_key(e: &DecompEntry) -> (std::cmp::Reverse<usize>, usize) {
    (std::cmp::Reverse(e.k), e.i)
}

impl DecompTable {
    pub(crate) fn from_entries(n: usize, d: usize, map: Multiplicities) -> Self {
        let mut entries: Vec<DecompEntry> = map
            .into_iter()
            .filter(|(_, m)| m.bits() > 0)
            .map(|((k, i), mult)| DecompEntry { k, i, mult })
            .collect();
        entries.sort_by_key(sort_key);
        DecompTable { n, d, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> std::slice::Iter<'_, DecompEntry> {
        self.entries.iter()
    }

    pub fn get(&self, k: usize, i: usize) -> BigUint {
        self.entries
            .binary_search_by_key(&sort_key(&DecompEntry { k, i, mult: BigUint::default() }), sort_key)
            .map(|idx| self.entries[idx].mult.clone())
            .unwrap_or_default()
    }

    /// Total number of summands, counted with multiplicity.
    pub fn summand_count(&self) -> BigUint {
        self.entries.iter().map(|e| &e.mult).sum()
    }

    /// Checks `mult(k, i) = mult(k, d(n-k) - i)` and returns the first offending entry.
    pub fn duality_violation(&self) -> Option<(usize, usize)> {
        self.entries.iter().find_map(|e| {
            let top = self.d * (self.n - e.k);
            (e.i > top || self.get(e.k, top - e.i) != e.mult).then_some((e.k, e.i))
        })
    }

    pub fn chow_rank(&self, ranks: &RankProfile) -> Result<BigUint> {
        let mut total = BigUint::default();
        for e in &self.entries {
            total += &e.mult * ranks.get(e.k)?;
        }
        Ok(total)
    }

    /// `sum mult(k, i) t^(2i) P(t)^k`.
    pub fn poincare(&self, betti: &BettiVector) -> Result<IntPoly> {
        if betti.dim() != self.d {
            return Err(Error::InvalidInput(format!(
                "Betti vector of a {}-fold given for d = {}",
                betti.dim(),
                self.d
            )));
        }
        let p = betti.poincare();
        Ok(self
            .entries
            .iter()
            .map(|e| p.pow(e.k).shift(2 * e.i).scale(&BigInt::from(e.mult.clone())))
            .sum())
    }
}

/// `h(X^k)(i)` in the usual notation, with `h(X)` and untwisted forms abbreviated.
pub fn summand_label(base: &str, k: usize, i: usize) -> String {
    let power = if k == 1 { base.to_string() } else { format!("{base}^{k}") };
    if i == 0 {
        format!("h({power})")
    } else {
        format!("h({power})({i})")
    }
}

impl fmt::Display for DecompTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h(X[{}]), dim X = {}", self.n, self.d)?;
        for e in &self.entries {
            writeln!(f, "  {:<14} x {}", summand_label("X", e.k, e.i), e.mult)?;
        }
        Ok(())
    }
}

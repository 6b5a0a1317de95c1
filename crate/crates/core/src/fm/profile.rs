use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};

/// Chow ranks `r_k = rank A(X^k)` for `k = 1..=n`.
///
/// Chow groups have no Künneth formula, so each power needs its own rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    #[serde(with = "rank_map")]
    ranks: BTreeMap<usize, BigUint>,
}

mod rank_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        k: usize,
        #[serde(with = "crate::bigjson")]
        rank: BigUint,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, BigUint>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(&k, r)| Entry { k, rank: r.clone() }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, BigUint>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| (e.k, e.rank)).collect())
    }
}

impl RankProfile {
    pub fn new(ranks: impl IntoIterator<Item = (usize, BigUint)>) -> Result<Self> {
        let ranks: BTreeMap<usize, BigUint> = ranks.into_iter().collect();
        if let Some((k, _)) = ranks.iter().find(|(k, r)| **k == 0 || r.bits() == 0) {
            return Err(Error::InvalidInput(format!(
                "rank entry for k = {k} must have k >= 1 and rank >= 1"
            )));
        }
        Ok(RankProfile { ranks })
    }

    /// `rank A((P^d)^k) = (d+1)^k` for `k = 1..=n`.
    pub fn projective(d: usize, n: usize) -> Self {
        let base = BigUint::from(d + 1);
        RankProfile {
            ranks: (1..=n).map(|k| (k, base.pow(k as u32))).collect(),
        }
    }

    pub fn get(&self, k: usize) -> Result<&BigUint> {
        self.ranks
            .get(&k)
            .ok_or_else(|| Error::InvalidInput(format!("rank profile has no entry for X^{k}")))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.ranks.iter().map(|(k, r)| (*k, r))
    }
}

/// Betti numbers `b_0, ..., b_{2d}` of a smooth projective `d`-fold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct BettiVector {
    betti: Vec<u64>,
}

impl BettiVector {
    pub fn new(betti: Vec<i64>) -> Result<Self> {
        if betti.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "expected 2d+1 Betti numbers, got {}",
                betti.len()
            )));
        }
        if let Some(b) = betti.iter().find(|b| **b < 0) {
            return Err(Error::InvalidInput(format!("negative Betti number {b}")));
        }
        if betti[0] < 1 {
            return Err(Error::InvalidInput("b_0 must be at least 1".into()));
        }
        let betti: Vec<u64> = betti.into_iter().map(|b| b as u64).collect();
        let len = betti.len();
        if (0..len).any(|i| betti[i] != betti[len - 1 - i]) {
            log::warn!("Betti numbers {betti:?} are not Poincaré-symmetric");
        }
        Ok(BettiVector { betti })
    }

    /// `P^d`: ones in even degrees.
    pub fn projective(d: usize) -> Self {
        BettiVector {
            betti: (0..=2 * d).map(|i| u64::from(i % 2 == 0)).collect(),
        }
    }

    /// Smooth projective curve of genus `g`.
    pub fn curve(genus: u64) -> Self {
        BettiVector {
            betti: vec![1, 2 * genus, 1],
        }
    }

    pub fn dim(&self) -> usize {
        (self.betti.len() - 1) / 2
    }

    pub fn numbers(&self) -> &[u64] {
        &self.betti
    }

    /// `P(t) = sum_j b_j t^j`.
    pub fn poincare(&self) -> IntPoly {
        IntPoly::from_coeffs(self.betti.iter().map(|&b| BigInt::from(b)).collect())
    }
}

impl TryFrom<Vec<i64>> for BettiVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        BettiVector::new(v)
    }
}

impl From<BettiVector> for Vec<i64> {
    fn from(b: BettiVector) -> Vec<i64> {
        b.betti.into_iter().map(|x| x as i64).collect()
    }
}

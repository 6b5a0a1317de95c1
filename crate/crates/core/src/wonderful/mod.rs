//! Motive decompositions of wonderful compactifications of arbitrary
//! arrangements, given purely combinatorially: strata with dimensions, a
//! containment order and a building set.
//!
//! [`decompose`] evaluates the closed form over all nests of the building
//! set; [`decompose_iterative`] replays the blow-ups one center at a time and
//! must land on the same answer for every admissible order.

mod arrangement;
mod fm;
mod orders;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};

pub use arrangement::{AmbientDoc, Arrangement, ArrangementDoc, StratumDoc};
pub use fm::{fm_arrangement, fm_stratum_id, FM_ARRANGEMENT_CAP};
pub use orders::{all_admissible_orders, check_order, sample_admissible_orders};

/// A nest of the building set, as sorted stratum indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GNest {
    elements: Vec<usize>,
}

impl GNest {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Recursive factor test: the minimal members of `set` are exactly the
/// factors of their intersection, and the members above each minimal one
/// again form a nest.
pub fn is_g_nest(arr: &Arrangement, set: &[usize]) -> bool {
    if set.is_empty() {
        return true;
    }
    if set.iter().any(|&g| !arr.is_building(g)) {
        return false;
    }
    let mut minimal: Vec<usize> = set
        .iter()
        .copied()
        .filter(|&a| !set.iter().any(|&b| arr.strictly_contained(b, a)))
        .collect();
    minimal.sort_unstable();
    let Some(meet) = arr.meet_of(minimal.iter().copied()) else {
        return false;
    };
    if arr.factors(meet) != minimal.as_slice() {
        return false;
    }
    minimal.iter().all(|&a| {
        let slice: Vec<usize> = set.iter().copied().filter(|&b| arr.strictly_contained(a, b)).collect();
        is_g_nest(arr, &slice)
    })
}

/// All nonempty nests, each once. Subsets of nests are nests, so a depth-first
/// search that only extends nests reaches every one of them.
pub fn enumerate_g_nests(arr: &Arrangement) -> Vec<GNest> {
    fn dfs(arr: &Arrangement, from: usize, cur: &mut Vec<usize>, out: &mut Vec<GNest>) {
        for pos in from..arr.building().len() {
            cur.push(arr.building()[pos]);
            if is_g_nest(arr, cur) {
                let mut elements = cur.clone();
                elements.sort_unstable();
                out.push(GNest { elements });
                dfs(arr, pos + 1, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    dfs(arr, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Intersection of the members of a nest.
pub fn nest_stratum(arr: &Arrangement, t: &GNest) -> Result<usize> {
    arr.meet_of(t.elements.iter().copied())
        .ok_or_else(|| Error::Arrangement(format!("nest {:?} has empty intersection", arr.names(&t.elements))))
}

/// `r_G = dim(intersection of the members strictly containing G) - dim G`,
/// the intersection being the ambient when there are none.
pub fn weight_ranges(arr: &Arrangement, t: &GNest) -> Result<BTreeMap<usize, usize>> {
    t.elements
        .iter()
        .map(|&g| Ok((g, codim_below(arr, g, &t.elements)?)))
        .collect()
}

fn codim_below(arr: &Arrangement, g: usize, members: &[usize]) -> Result<usize> {
    let above = members.iter().copied().filter(|&b| arr.strictly_contained(g, b));
    let top = arr.meet_of(above).ok_or_else(|| {
        Error::Arrangement(format!("members above {:?} do not intersect", arr.id(g)))
    })?;
    Ok(arr.dim(top) - arr.dim(g))
}

fn box_poly(r: usize) -> IntPoly {
    if r < 2 {
        IntPoly::zero()
    } else {
        IntPoly::geometric_range(1, r - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub stratum: String,
    pub dim: usize,
    pub twist: usize,
    #[serde(with = "crate::bigjson")]
    pub mult: BigUint,
}

/// `h(Y_G)` as a list of twisted stratum motives, the untwisted `h(Y)` first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub ambient: String,
    pub summands: Vec<Summand>,
}

type Tally = BTreeMap<(usize, usize), BigUint>;

impl Decomposition {
    fn from_tally(arr: &Arrangement, tally: Tally) -> Self {
        let mut summands: Vec<Summand> = tally
            .into_iter()
            .filter(|(_, m)| m.bits() > 0)
            .map(|((s, twist), mult)| Summand {
                stratum: arr.id(s).to_string(),
                dim: arr.dim(s),
                twist,
                mult,
            })
            .collect();
        summands.sort_by(|a, b| {
            b.dim
                .cmp(&a.dim)
                .then_with(|| a.stratum.cmp(&b.stratum))
                .then(a.twist.cmp(&b.twist))
        });
        Decomposition {
            ambient: arr.id(0).to_string(),
            summands,
        }
    }

    /// Multiplicities summed over strata of equal dimension, keyed by `(dim, twist)`.
    pub fn by_dimension(&self) -> BTreeMap<(usize, usize), BigUint> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry((s.dim, s.twist)).or_insert_with(BigUint::default) += &s.mult;
        }
        out
    }

    pub fn summand_count(&self) -> BigUint {
        self.summands.iter().map(|s| &s.mult).sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.summands {
            let label = if s.twist == 0 {
                format!("h({})", s.stratum)
            } else {
                format!("h({})({})", s.stratum, s.twist)
            };
            writeln!(f, "  {label:<24} x {}", s.mult)?;
        }
        Ok(())
    }
}

/// Closed form: `h(Y)` plus `h(meet T)(|mu|)` for every nest `T` and every
/// `mu` with `1 <= mu_G <= r_G - 1`.
pub fn decompose(arr: &Arrangement) -> Result<Decomposition> {
    let mut tally = Tally::new();
    tally.insert((0, 0), BigUint::from(1u32));
    for t in enumerate_g_nests(arr) {
        let stratum = nest_stratum(arr, &t)?;
        let poly: IntPoly = weight_ranges(arr, &t)?.values().map(|&r| box_poly(r)).product();
        add_poly(&mut tally, stratum, &poly)?;
    }
    Ok(Decomposition::from_tally(arr, tally))
}

fn add_poly(tally: &mut Tally, stratum: usize, poly: &IntPoly) -> Result<()> {
    for (twist, c) in poly.coeffs().iter().enumerate() {
        let c = c
            .to_biguint()
            .ok_or_else(|| Error::CrossCheck(format!("negative multiplicity {c}")))?;
        if c.bits() > 0 {
            *tally.entry((stratum, twist)).or_default() += c;
        }
    }
    Ok(())
}

/// Replays the blow-ups along `order` (building ids, smallest centers first).
///
/// Working from the last center back to the first, each term `(T, w)` stands
/// for `h(Y_k T)(w)`. Blowing up `G` turns it into `h(Y_{k-1} T)(w)` plus,
/// when `T + G` is a nest, `h(Y_{k-1} (T + G))(w + t)` for `1 <= t <= r - 1`,
/// with `r` the codimension of `G` in the members of `T` above it (or in `Y`).
/// The result is compared with [`decompose`].
pub fn decompose_iterative(arr: &Arrangement, order: &[String]) -> Result<Decomposition> {
    let order = check_order(arr, order)?;
    let mut terms: BTreeMap<(Vec<usize>, usize), BigUint> = BTreeMap::new();
    terms.insert((vec![], 0), BigUint::from(1u32));
    for &g in order.iter().rev() {
        let mut next = terms.clone();
        for ((t, w), mult) in &terms {
            let mut grown = t.clone();
            grown.push(g);
            grown.sort_unstable();
            if !is_g_nest(arr, &grown) {
                continue;
            }
            let r = codim_below(arr, g, t)?;
            for step in 1..r {
                *next.entry((grown.clone(), w + step)).or_default() += mult;
            }
        }
        terms = next;
    }
    let mut tally = Tally::new();
    for ((t, w), mult) in terms {
        let s = arr
            .meet_of(t.iter().copied())
            .ok_or_else(|| Error::Arrangement(format!("nest {:?} has empty intersection", arr.names(&t))))?;
        *tally.entry((s, w)).or_default() += mult;
    }
    let iterative = Decomposition::from_tally(arr, tally);
    let closed = decompose(arr)?;
    if iterative != closed {
        return Err(Error::CrossCheck(format!(
            "blow-up order {:?} gives\n{iterative}but the closed form is\n{closed}",
            arr.names(&order)
        )));
    }
    Ok(iterative)
}

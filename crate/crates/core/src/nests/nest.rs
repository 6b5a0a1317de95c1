use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{sigma, IntPoly};
use crate::error::{Error, Result};

use super::partition::{block_elements, full_mask, Partitions};

/// Default largest `n` for nest enumeration; nest counts grow super-exponentially.
pub const DEFAULT_NEST_CAP: usize = 9;

/// Canonical sort key for a block: size first, then bitmask value.
fn block_key(b: &u32) -> (u32, u32) {
    (b.count_ones(), *b)
}

/// A nest of `{1, ..., n}`: a family of blocks containing every singleton in
/// which any two blocks are disjoint or nested.
///
/// Blocks are bitmasks kept sorted by `(size, value)`, so equal nests have
/// equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nest {
    n: usize,
    blocks: Vec<u32>,
}

impl Nest {
    /// Validate and canonicalize a family of blocks.
    pub fn new(n: usize, blocks: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n == 0 || n > 31 {
            return Err(Error::InvalidInput(format!("nest ground set size {n} out of range")));
        }
        let full = full_mask(n);
        let mut blocks: Vec<u32> = blocks.into_iter().collect();
        blocks.sort_by_key(block_key);
        blocks.dedup();
        for &b in &blocks {
            if b == 0 || b & !full != 0 {
                return Err(Error::InvalidInput(format!("block {b:#b} is not a nonempty subset of [{n}]")));
            }
        }
        for i in 0..n {
            if blocks.binary_search_by_key(&(1, 1 << i), block_key).is_err() {
                return Err(Error::InvalidInput(format!("singleton {{{}}} missing", i + 1)));
            }
        }
        for (i, &a) in blocks.iter().enumerate() {
            for &b in &blocks[i + 1..] {
                let meet = a & b;
                if meet != 0 && meet != a && meet != b {
                    return Err(Error::InvalidInput(format!(
                        "blocks {:?} and {:?} overlap",
                        block_elements(a),
                        block_elements(b)
                    )));
                }
            }
        }
        Ok(Nest { n, blocks })
    }

    /// Nest given by its non-singleton blocks as element lists; singletons are added.
    pub fn with_singletons(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let singles = (0..n).map(|i| 1u32 << i);
        let extra = sets.iter().map(|s| super::partition::block_of(s));
        Self::new(n, singles.chain(extra))
    }

    pub fn singletons(n: usize) -> Self {
        Nest {
            n,
            blocks: (0..n).map(|i| 1 << i).collect(),
        }
    }

    fn from_trusted(n: usize, mut blocks: Vec<u32>) -> Self {
        blocks.sort_by_key(block_key);
        debug_assert!(Nest::new(n, blocks.iter().copied()).is_ok());
        Nest { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    /// Blocks of size at least two, in canonical order.
    pub fn internal_blocks(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().copied().filter(|b| b.count_ones() >= 2)
    }

    /// Apply a permutation of the ground set; `perm[i]` is the image of
    /// element `i + 1` (0-based image).
    pub fn relabel(&self, perm: &[usize]) -> Nest {
        Nest::from_trusted(self.n, self.blocks.iter().map(|&b| permute_block(b, perm)).collect())
    }
}

pub(crate) fn permute_block(b: u32, perm: &[usize]) -> u32 {
    (0..perm.len())
        .filter(|&i| b >> i & 1 == 1)
        .fold(0, |m, i| m | 1 << perm[i])
}

impl fmt::Debug for Nest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nest{self}")
    }
}

impl fmt::Display for Nest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                block_elements(b)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{{{}}}", parts.join(" | "))
    }
}

fn trees_on(mask: u32) -> Box<dyn Iterator<Item = Vec<u32>>> {
    if mask.count_ones() == 1 {
        return Box::new(std::iter::once(vec![mask]));
    }
    Box::new(
        Partitions::of_mask(mask)
            .filter(|p| p.len() >= 2)
            .flat_map(move |children| {
                forests_over(children).map(move |mut family| {
                    family.push(mask);
                    family
                })
            }),
    )
}

fn forests_over(blocks: Vec<u32>) -> Box<dyn Iterator<Item = Vec<u32>>> {
    match blocks.split_first() {
        None => Box::new(std::iter::once(Vec::new())),
        Some((&first, rest)) => {
            let rest = rest.to_vec();
            Box::new(trees_on(first).flat_map(move |tree| {
                forests_over(rest.clone()).map(move |mut others| {
                    others.extend_from_slice(&tree);
                    others
                })
            }))
        }
    }
}

/// Lazily streams every nest of `[n]` exactly once.
///
/// The maximal blocks form a partition of `[n]`; below each block of size at
/// least two the children again form a partition with at least two parts.
pub struct Nests {
    n: usize,
    inner: Box<dyn Iterator<Item = Vec<u32>>>,
}

impl Nests {
    fn start(n: usize) -> Self {
        Nests {
            n,
            inner: Box::new(Partitions::of_mask(full_mask(n)).flat_map(forests_over)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl Iterator for Nests {
    type Item = Nest;
    fn next(&mut self) -> Option<Nest> {
        self.inner.next().map(|blocks| Nest::from_trusted(self.n, blocks))
    }
}

/// Re-cloning restarts the enumeration from the beginning.
impl Clone for Nests {
    fn clone(&self) -> Self {
        Nests::start(self.n)
    }
}

pub fn enumerate_nests(n: usize) -> Result<Nests> {
    enumerate_nests_capped(n, DEFAULT_NEST_CAP)
}

pub fn enumerate_nests_capped(n: usize, cap: usize) -> Result<Nests> {
    if n == 0 {
        return Err(Error::InvalidInput("nests need n >= 1".into()));
    }
    if n > cap || n > 31 {
        return Err(Error::cap("nests", n, cap.min(31)));
    }
    Ok(Nests::start(n))
}

/// Shape data of a nest: maximal blocks and child counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestStats {
    /// Number of maximal blocks.
    pub c: usize,
    /// `c_I` for every block of size at least two.
    pub children: BTreeMap<u32, usize>,
    /// Non-singleton blocks in canonical order.
    pub internal: Vec<u32>,
    pub maximal: Vec<u32>,
    /// Minimal strictly larger block, if any, for each block in canonical order.
    pub parent: Vec<Option<u32>>,
}

impl NestStats {
    pub fn child_count(&self, block: u32) -> usize {
        self.children.get(&block).copied().unwrap_or(0)
    }
}

pub fn nest_stats(s: &Nest) -> NestStats {
    let blocks = &s.blocks;
    let mut parent = Vec::with_capacity(blocks.len());
    let mut children: BTreeMap<u32, usize> = BTreeMap::new();
    let mut maximal = Vec::new();
    for (i, &b) in blocks.iter().enumerate() {
        // supersets form a chain; sorted by size, the first one is the parent
        let p = blocks[i + 1..].iter().copied().find(|&q| q & b == b && q != b);
        match p {
            Some(q) => *children.entry(q).or_insert(0) += 1,
            None => maximal.push(b),
        }
        parent.push(p);
    }
    let internal: Vec<u32> = s.internal_blocks().collect();
    for &b in &internal {
        children.entry(b).or_insert(0);
    }
    NestStats {
        c: maximal.len(),
        children,
        internal,
        maximal,
        parent,
    }
}

/// `prod_{I internal} sigma(c_I - 1, d)`: the generating polynomial of `x^|mu|`
/// over all admissible weight vectors.
pub fn nest_weight_poly(s: &Nest, d: usize) -> IntPoly {
    let stats = nest_stats(s);
    stats
        .internal
        .iter()
        .map(|b| sigma(stats.child_count(*b) - 1, d))
        .product()
}

/// Weights `mu_I` on the internal blocks of a nest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeightVector {
    entries: Vec<(u32, usize)>,
}

impl WeightVector {
    pub fn new(entries: impl IntoIterator<Item = (u32, usize)>) -> Self {
        let mut entries: Vec<(u32, usize)> = entries.into_iter().collect();
        entries.sort_by_key(|(b, _)| block_key(b));
        WeightVector { entries }
    }

    pub fn entries(&self) -> &[(u32, usize)] {
        &self.entries
    }

    pub fn get(&self, block: u32) -> Option<usize> {
        self.entries.iter().find(|(b, _)| *b == block).map(|(_, w)| *w)
    }

    /// Total weight `|mu|`.
    pub fn norm(&self) -> usize {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn relabel(&self, perm: &[usize]) -> WeightVector {
        WeightVector::new(self.entries.iter().map(|&(b, w)| (permute_block(b, perm), w)))
    }
}

/// Odometer over the box `prod_I [1, d(c_I - 1) - 1]`.
#[derive(Clone, Debug)]
pub struct WeightVectors {
    blocks: Vec<u32>,
    upper: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Iterator for WeightVectors {
    type Item = WeightVector;

    fn next(&mut self) -> Option<WeightVector> {
        let cur = self.current.as_mut()?;
        let out = WeightVector {
            entries: self.blocks.iter().copied().zip(cur.iter().copied()).collect(),
        };
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.upper[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
        Some(out)
    }
}

/// Every admissible weight vector of `s` in dimension `d`. Yields a single
/// empty vector when `s` has no internal blocks, and nothing when some range
/// is empty.
pub fn enumerate_weight_vectors(s: &Nest, d: usize) -> WeightVectors {
    let stats = nest_stats(s);
    let upper: Vec<usize> = stats
        .internal
        .iter()
        .map(|b| (d * (stats.child_count(*b) - 1)).saturating_sub(1))
        .collect();
    let current = if upper.iter().all(|&u| u >= 1) {
        Some(vec![1; upper.len()])
    } else {
        None
    };
    WeightVectors {
        blocks: stats.internal,
        upper,
        current,
    }
}

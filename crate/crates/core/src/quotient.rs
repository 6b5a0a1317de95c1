//! Decomposition of `h(X[n]/S_n)` indexed by unlabeled weighted forests.
//!
//! Forests are generated directly (integer partitions and multisets of
//! smaller trees) and the resulting table is checked against the labeled
//! world: every weighted nest is mapped to its forest, and the distinct
//! forests per `(nu, m)` are counted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::fm::BettiVector;
use crate::limits::Limits;
use crate::macdonald::PoincareSeries;
use crate::nests::{
    enumerate_nests_capped, enumerate_weight_vectors, forest_of_nest, labelings_count, Tree,
    WeightedForest,
};

/// Integer partitions of `n` with parts at most `max`, parts descending.
fn integer_partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in integer_partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Nondecreasing index sequences of length `r` into `0..len`.
fn multisets(len: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i, len, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, r, &mut Vec::new(), &mut out);
    out
}

/// Every multiset of trees whose leaf counts form `parts`, drawing from `by_size`.
fn tree_multisets(parts: &[usize], by_size: &[Vec<Tree>]) -> Vec<Vec<Tree>> {
    let mut groups: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *groups.entry(p).or_default() += 1;
    }
    let mut acc: Vec<Vec<Tree>> = vec![vec![]];
    for (size, r) in groups {
        let pool = &by_size[size];
        let choices = multisets(pool.len(), r);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for base in &acc {
            for pick in &choices {
                let mut v = base.clone();
                v.extend(pick.iter().map(|&i| pool[i].clone()));
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Canonical trees with `m` leaves, for `m = 0..=n`, with admissible weights.
fn trees_by_size(n: usize, d: usize) -> Vec<Vec<Tree>> {
    let mut by_size: Vec<Vec<Tree>> = vec![vec![], vec![Tree::Leaf]];
    for m in 2..=n {
        let mut trees = Vec::new();
        for parts in integer_partitions(m, m - 1) {
            let upper = (parts.len() - 1) * d;
            for children in tree_multisets(&parts, &by_size) {
                for w in 1..upper {
                    trees.push(Tree::node(w, children.clone()).expect("at least two children"));
                }
            }
        }
        by_size.push(trees);
    }
    by_size
}

/// Every unlabeled weighted forest on `n` leaves, each once, in canonical order.
pub fn enumerate_weighted_forests(n: usize, d: usize) -> Result<Vec<WeightedForest>> {
    enumerate_weighted_forests_capped(n, d, Limits::default().forests)
}

pub fn enumerate_weighted_forests_capped(n: usize, d: usize, cap: usize) -> Result<Vec<WeightedForest>> {
    check(n, d)?;
    if n > cap {
        return Err(Error::cap("weighted forests", n, cap));
    }
    let by_size = trees_by_size(n, d);
    let mut out: Vec<WeightedForest> = integer_partitions(n, n)
        .iter()
        .flat_map(|parts| tree_multisets(parts, &by_size))
        .map(WeightedForest::new)
        .collect();
    out.sort();
    Ok(out)
}

fn check(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("need n >= 1 and d >= 1".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEntry {
    /// Multiplicities of the distinct trees, decreasing.
    pub nu: Vec<usize>,
    /// Total weight, the Tate twist of the summand.
    pub m: usize,
    #[serde(with = "crate::bigjson")]
    pub lambda: BigUint,
    /// Canonical encodings of the forests counted by `lambda` (verbose output only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forests: Option<Vec<String>>,
}

/// `h(X[n]/S_n)` as `lambda(nu, m)` copies of `h(X^(n_1) x ... x X^(n_r))(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDecomp {
    pub n: usize,
    pub d: usize,
    pub entries: Vec<QuotientEntry>,
}

type Groups = BTreeMap<(Vec<usize>, usize), Vec<WeightedForest>>;

fn group(forests: impl IntoIterator<Item = WeightedForest>) -> Groups {
    let mut groups = Groups::new();
    for f in forests {
        let ty = f.forest_type();
        groups.entry((ty.multiplicities, ty.total_weight)).or_default().push(f);
    }
    groups
}

fn entry_key(e: &QuotientEntry) -> (std::cmp::Reverse<usize>, std::cmp::Reverse<Vec<usize>>, usize) {
    (
        std::cmp::Reverse(e.nu.iter().sum()),
        std::cmp::Reverse(e.nu.clone()),
        e.m,
    )
}

impl QuotientDecomp {
    fn from_groups(n: usize, d: usize, groups: Groups, verbose: bool) -> Self {
        let mut entries: Vec<QuotientEntry> = groups
            .into_iter()
            .map(|((nu, m), fs)| QuotientEntry {
                nu,
                m,
                lambda: BigUint::from(fs.len()),
                forests: verbose.then(|| fs.iter().map(WeightedForest::encoding).collect()),
            })
            .collect();
        entries.sort_by_key(entry_key);
        QuotientDecomp { n, d, entries }
    }

    pub fn lambda(&self, nu: &[usize], m: usize) -> BigUint {
        let mut nu = nu.to_vec();
        nu.sort_unstable_by(|a, b| b.cmp(a));
        self.entries
            .iter()
            .find(|e| e.nu == nu && e.m == m)
            .map(|e| e.lambda.clone())
            .unwrap_or_default()
    }

    /// Drop the per-entry forest lists.
    pub fn terse(mut self) -> Self {
        for e in &mut self.entries {
            e.forests = None;
        }
        self
    }

    /// `sum lambda(nu, m) t^(2m) prod_i P(X^(n_i))`.
    pub fn poincare(&self, betti: &BettiVector) -> Result<IntPoly> {
        if betti.dim() != self.d {
            return Err(Error::InvalidInput(format!(
                "Betti vector of a {}-fold given for d = {}",
                betti.dim(),
                self.d
            )));
        }
        let sym = PoincareSeries::macdonald(betti, self.n)?;
        let mut total = IntPoly::zero();
        for e in &self.entries {
            let factor: IntPoly = e
                .nu
                .iter()
                .map(|&k| sym.coeff(k).cloned())
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .product();
            total += &factor.shift(2 * e.m).scale(&BigInt::from(e.lambda.clone()));
        }
        Ok(total)
    }
}

/// `h(X^(n_1) x ... x X^(n_r))(m)`.
pub fn quotient_summand_label(nu: &[usize], m: usize) -> String {
    let factors: Vec<String> = nu
        .iter()
        .map(|&k| if k == 1 { "X".to_string() } else { format!("X^({k})") })
        .collect();
    let base = format!("h({})", factors.join(" x "));
    if m == 0 {
        base
    } else {
        format!("{base}({m})")
    }
}

impl fmt::Display for QuotientDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h(X[{}]/S_{}), dim X = {}", self.n, self.n, self.d)?;
        for e in &self.entries {
            writeln!(f, "  {:<22} x {}", quotient_summand_label(&e.nu, e.m), e.lambda)?;
            for enc in e.forests.iter().flatten() {
                writeln!(f, "      {enc}")?;
            }
        }
        Ok(())
    }
}

/// `lambda(nu, m)`: forests of type `nu` and total weight `m`.
pub fn lambda(n: usize, d: usize, nu: &[usize], m: usize) -> Result<BigUint> {
    let mut nu = nu.to_vec();
    nu.sort_unstable_by(|a, b| b.cmp(a));
    let count = enumerate_weighted_forests(n, d)?
        .into_iter()
        .filter(|f| {
            let ty = f.forest_type();
            ty.multiplicities == nu && ty.total_weight == m
        })
        .count();
    Ok(BigUint::from(count))
}

/// The full `lambda` table, checked against the orbits of labeled weighted
/// nests. Forest encodings are kept on every entry; see [`QuotientDecomp::terse`].
pub fn quotient_decomposition(n: usize, d: usize) -> Result<QuotientDecomp> {
    quotient_decomposition_with(n, d, Limits::default())
}

pub fn quotient_decomposition_with(n: usize, d: usize, limits: Limits) -> Result<QuotientDecomp> {
    let forests = enumerate_weighted_forests_capped(n, d, limits.forests)?;
    let direct = group(forests.iter().cloned());

    let mut orbits: BTreeMap<WeightedForest, BigUint> = BTreeMap::new();
    let mut labeled = BigUint::default();
    for s in enumerate_nests_capped(n, limits.nests)? {
        for mu in enumerate_weight_vectors(&s, d) {
            *orbits.entry(forest_of_nest(&s, &mu)?).or_default() += 1u32;
            labeled += 1u32;
        }
    }
    let oracle = group(orbits.keys().cloned());
    if oracle != direct {
        return Err(Error::CrossCheck(format!(
            "forest enumeration and labeled orbits disagree for n = {n}, d = {d}"
        )));
    }
    // each orbit must have exactly labelings_count elements
    let mut mass = BigUint::default();
    for (f, size) in &orbits {
        let expect = labelings_count(f);
        if &expect != size {
            return Err(Error::CrossCheck(format!("orbit of {f} has {size} elements, expected {expect}")));
        }
        mass += expect;
    }
    if mass != labeled {
        return Err(Error::CrossCheck(format!("mass {mass} differs from {labeled} labeled nests")));
    }
    Ok(QuotientDecomp::from_groups(n, d, direct, true))
}

/// Table from forest enumeration alone; usable past the nest cap.
pub fn quotient_decomposition_unchecked(n: usize, d: usize, limits: Limits) -> Result<QuotientDecomp> {
    let forests = enumerate_weighted_forests_capped(n, d, limits.forests)?;
    Ok(QuotientDecomp::from_groups(n, d, group(forests), true))
}

pub fn quotient_poincare(n: usize, d: usize, betti: &BettiVector) -> Result<IntPoly> {
    quotient_decomposition(n, d)?.poincare(betti)
}

/// Distinct forest encodings, for diagnostics.
pub fn forest_encodings(forests: &[WeightedForest]) -> BTreeSet<String> {
    forests.iter().map(WeightedForest::encoding).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::poincare;

    fn leaf() -> Tree {
        Tree::Leaf
    }

    fn node(w: usize, c: Vec<Tree>) -> Tree {
        Tree::node(w, c).unwrap()
    }

    #[test]
    fn partitions_and_multisets() {
        assert_eq!(integer_partitions(4, 4).len(), 5);
        assert_eq!(integer_partitions(4, 3).len(), 4);
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn n_two() {
        assert_eq!(enumerate_weighted_forests(2, 1).unwrap().len(), 1);
        let got = forest_encodings(&enumerate_weighted_forests(2, 3).unwrap());
        let expect: BTreeSet<String> = ["[* *]", "[1(*,*)]", "[2(*,*)]"].map(String::from).into();
        assert_eq!(got, expect);
    }

    #[test]
    fn n_three_d_two() {
        let got = forest_encodings(&enumerate_weighted_forests(3, 2).unwrap());
        let mut expect = BTreeSet::new();
        expect.insert(WeightedForest::new(vec![leaf(); 3]).encoding());
        expect.insert(WeightedForest::new(vec![node(1, vec![leaf(), leaf()]), leaf()]).encoding());
        for b in 1..=3 {
            expect.insert(WeightedForest::new(vec![node(b, vec![leaf(); 3])]).encoding());
        }
        let cat = node(1, vec![leaf(), node(1, vec![leaf(), leaf()])]);
        expect.insert(WeightedForest::new(vec![cat]).encoding());
        assert_eq!(got, expect);
    }

    #[test]
    fn forests_are_distinct_and_admissible() {
        for n in 1..=6 {
            for d in 1..=3 {
                let fs = enumerate_weighted_forests(n, d).unwrap();
                let set: BTreeSet<_> = fs.iter().collect();
                assert_eq!(set.len(), fs.len());
                assert!(fs.iter().all(|f| f.leaves() == n && f.weights_admissible(d)));
            }
        }
    }

    #[test]
    fn oracle_agrees() {
        for n in 1..=6 {
            for d in 1..=3 {
                quotient_decomposition(n, d).unwrap();
            }
        }
    }

    #[test]
    fn single_point() {
        let q = quotient_decomposition(1, 2).unwrap();
        assert_eq!(q.entries.len(), 1);
        assert_eq!((q.entries[0].nu.clone(), q.entries[0].m), (vec![1], 0));
    }

    #[test]
    fn lambda_examples() {
        for d in 1..=4 {
            assert_eq!(lambda(2, d, &[2], 0).unwrap(), BigUint::from(1u32));
        }
        for d in 2..=3 {
            for m in 1..2 * d {
                let expect = m.min(2 * d - m);
                assert_eq!(lambda(3, d, &[1], m).unwrap(), BigUint::from(expect), "d={d} m={m}");
            }
        }
        for a in 1..=2 {
            assert!(lambda(4, 3, &[2], 2 * a).unwrap() >= BigUint::from(1u32));
        }
    }

    #[test]
    fn quotient_poincare_examples() {
        let p1 = BettiVector::projective(1);
        assert_eq!(quotient_poincare(2, 1, &p1).unwrap(), IntPoly::from_i64s(&[1, 0, 1, 0, 1]));
        // P(X^(2)) + t^2 P(X) for X = P^2
        let p2 = BettiVector::projective(2);
        let sym2 = crate::macdonald::symmetric_product_poincare(&p2, 2).unwrap();
        let expect = &sym2 + &p2.poincare().shift(2);
        assert_eq!(quotient_poincare(2, 2, &p2).unwrap(), expect);
    }

    #[test]
    fn quotient_bounded_by_full_space() {
        for (d, b) in [(1, BettiVector::projective(1)), (2, BettiVector::projective(2))] {
            for n in 1..=5 {
                let q = quotient_poincare(n, d, &b).unwrap();
                let full = poincare(n, d, &b).unwrap();
                assert!((&full - &q).is_nonnegative(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn verbose_and_json() {
        let q = quotient_decomposition(2, 3).unwrap();
        let s = serde_json::to_string(&q.clone().terse()).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"d":3,"entries":[{"nu":[2],"m":0,"lambda":1},{"nu":[1],"m":1,"lambda":1},{"nu":[1],"m":2,"lambda":1}]}"#
        );
        assert_eq!(q.entries[1].forests.as_deref(), Some(&["[1(*,*)]".to_string()][..]));
        let back: QuotientDecomp = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
        assert_eq!(quotient_summand_label(&[2], 0), "h(X^(2))");
        assert_eq!(quotient_summand_label(&[1, 1], 1), "h(X x X)(1)");
    }
}

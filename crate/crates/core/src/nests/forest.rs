use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::nest::{nest_stats, Nest, WeightVector};

/// Unlabeled rooted tree whose internal nodes carry a positive weight and
/// have at least two children. Children are kept sorted, so the derived
/// equality and ordering are those of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Node),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    weight: usize,
    children: Vec<Tree>,
}

impl Node {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn children(&self) -> &[Tree] {
        &self.children
    }
}

impl Tree {
    pub fn node(weight: usize, mut children: Vec<Tree>) -> Result<Tree> {
        if children.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "internal node with {} child(ren); at least two are required",
                children.len()
            )));
        }
        if weight == 0 {
            return Err(Error::InvalidInput("internal node weight must be positive".into()));
        }
        children.sort();
        Ok(Tree::Node(Node { weight, children }))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(n) => n.children.iter().map(Tree::leaves).sum(),
        }
    }

    pub fn total_weight(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(n) => n.weight + n.children.iter().map(Tree::total_weight).sum::<usize>(),
        }
    }

    /// True when every internal node satisfies `1 <= m_v <= (c_v - 1) d - 1`.
    pub fn weights_admissible(&self, d: usize) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(n) => {
                let upper = (n.children.len() - 1) * d;
                n.weight >= 1
                    && n.weight < upper
                    && n.children.iter().all(|c| c.weights_admissible(d))
            }
        }
    }

    /// Number of leaf labelings with distinct results, i.e. `leaves! / |Aut|`.
    pub fn labelings(&self) -> BigUint {
        match self {
            Tree::Leaf => BigUint::one(),
            Tree::Node(n) => labelings_of_multiset(&n.children),
        }
    }

    fn write_encoding(&self, out: &mut String) {
        match self {
            Tree::Leaf => out.push('*'),
            Tree::Node(n) => {
                out.push_str(&n.weight.to_string());
                out.push('(');
                for (i, c) in n.children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.write_encoding(out);
                }
                out.push(')');
            }
        }
    }

    /// Canonical text form: `*` for a leaf, `w(child,child,...)` for a node.
    pub fn encoding(&self) -> String {
        let mut s = String::new();
        self.write_encoding(&mut s);
        s
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Labelings of a sorted multiset of trees sharing one pool of leaf labels.
fn labelings_of_multiset(trees: &[Tree]) -> BigUint {
    let total: usize = trees.iter().map(Tree::leaves).sum();
    let mut num = factorial(total);
    let mut den = BigUint::one();
    let mut i = 0;
    while i < trees.len() {
        let mut j = i;
        while j < trees.len() && trees[j] == trees[i] {
            j += 1;
        }
        let mult = j - i;
        let t = &trees[i];
        den *= factorial(t.leaves()).pow(mult as u32) * factorial(mult);
        num *= t.labelings().pow(mult as u32);
        i = j;
    }
    debug_assert!((&num % &den) == BigUint::default());
    num / den
}

/// Multiset of trees, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedForest {
    trees: Vec<Tree>,
}

/// Multiplicity type of a forest: how often each distinct tree occurs, plus
/// the total weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ForestType {
    /// Multiplicities of the distinct trees, in decreasing order.
    pub multiplicities: Vec<usize>,
    pub total_weight: usize,
}

impl WeightedForest {
    pub fn new(mut trees: Vec<Tree>) -> Self {
        trees.sort();
        WeightedForest { trees }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaves).sum()
    }

    pub fn total_weight(&self) -> usize {
        self.trees.iter().map(Tree::total_weight).sum()
    }

    pub fn weights_admissible(&self, d: usize) -> bool {
        self.trees.iter().all(|t| t.weights_admissible(d))
    }

    /// Distinct trees with their multiplicities, in canonical order.
    pub fn distinct_trees(&self) -> Vec<(&Tree, usize)> {
        let mut out: Vec<(&Tree, usize)> = Vec::new();
        for t in &self.trees {
            match out.last_mut() {
                Some((last, m)) if *last == t => *m += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    pub fn forest_type(&self) -> ForestType {
        let mut multiplicities: Vec<usize> = self.distinct_trees().iter().map(|(_, m)| *m).collect();
        multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        ForestType {
            multiplicities,
            total_weight: self.total_weight(),
        }
    }

    /// Canonical text form, trees separated by spaces inside brackets.
    pub fn encoding(&self) -> String {
        let parts: Vec<String> = self.trees.iter().map(Tree::encoding).collect();
        format!("[{}]", parts.join(" "))
    }
}

impl fmt::Display for WeightedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl fmt::Debug for WeightedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

/// Erase the labels of a weighted nest, keeping the weights on internal nodes.
pub fn forest_of_nest(s: &Nest, mu: &WeightVector) -> Result<WeightedForest> {
    let stats = nest_stats(s);
    let mut kids: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (&b, p) in s.blocks().iter().zip(&stats.parent) {
        if let Some(p) = p {
            kids.entry(*p).or_default().push(b);
        }
    }
    fn build(b: u32, kids: &BTreeMap<u32, Vec<u32>>, mu: &WeightVector) -> Result<Tree> {
        if b.count_ones() == 1 {
            return Ok(Tree::Leaf);
        }
        let w = mu.get(b).ok_or_else(|| {
            Error::InvalidInput(format!("no weight given for block {b:#b}"))
        })?;
        let children = kids[&b]
            .iter()
            .map(|&c| build(c, kids, mu))
            .collect::<Result<Vec<_>>>()?;
        Tree::node(w, children)
    }
    let trees = stats
        .maximal
        .iter()
        .map(|&b| build(b, &kids, mu))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedForest::new(trees))
}

/// Number of labeled weighted nests `(S, mu)` whose unlabeled forest is `f`.
pub fn labelings_count(f: &WeightedForest) -> BigUint {
    labelings_of_multiset(&f.trees)
}

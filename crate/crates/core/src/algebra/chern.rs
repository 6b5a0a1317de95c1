//! Formal Chern-root bookkeeping.
//!
//! Polynomials here live in `Z[x, a_1, ..., a_r]` where the `a_j` are formal
//! Chern roots. Chern classes enter only through elementary symmetric
//! polynomials of the roots, so every identity is checked as an exact
//! polynomial identity.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse multivariate integer polynomial. Variable `0` is `x`; variables
/// `1..nvars` are formal roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChernPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl FormalChernPoly {
    pub fn zero(nvars: usize) -> Self {
        FormalChernPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero terms as (exponent vector, coefficient), exponents ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// The part of total degree `deg` in the variables `vars`.
    pub fn homogeneous_part(&self, vars: std::ops::Range<usize>, deg: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[vars.clone()].iter().sum::<u32>() == deg {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Elementary symmetric polynomial `e_k` of the variables `vars`.
    pub fn elementary_symmetric(nvars: usize, vars: std::ops::Range<usize>, k: usize) -> Self {
        // coefficient of s^k in prod_j (1 + a_j s)
        let mut layers = vec![Self::one(nvars)];
        for v in vars {
            let a = Self::var(nvars, v);
            let mut next = vec![Self::zero(nvars); layers.len() + 1];
            for (i, layer) in layers.iter().enumerate() {
                next[i] = &next[i] + layer;
                next[i + 1] = &next[i + 1] + &(layer * &a);
            }
            layers = next;
        }
        layers.into_iter().nth(k).unwrap_or_else(|| Self::zero(nvars))
    }
}

impl<'a> Add<&'a FormalChernPoly> for &'a FormalChernPoly {
    type Output = FormalChernPoly;
    fn add(self, rhs: &'a FormalChernPoly) -> FormalChernPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Mul<&'a FormalChernPoly> for &'a FormalChernPoly {
    type Output = FormalChernPoly;
    fn mul(self, rhs: &'a FormalChernPoly) -> FormalChernPoly {
        let mut out = FormalChernPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Summary of a successful identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernWitness {
    pub rank: usize,
    pub dim: usize,
    /// Largest child count `c` for which the twisted identity was expanded.
    pub max_children: usize,
    /// Monomials compared across all identities.
    pub terms_compared: usize,
}

/// Largest `c` used for the normal-bundle specialization.
pub const CHERN_MAX_CHILDREN: usize = 3;

/// Check the twisted Chern polynomial identities:
///
/// * `prod_j (1 + a_j + x) = sum_i e_i(a) (1+x)^(r-i)` for `r` formal roots;
/// * for a bundle `N` with `c(N) = c(T)^(c-1)` where `T` has `d` roots `b_j`,
///   `prod_j (1 + b_j + x)^(c-1)`, `sum_i c_i(N) (1+x)^(d(c-1)-i)` and
///   `zeta(x)^(c-1)` with `zeta(x) = sum_i c_i(T) (1+x)^(d-i)` all agree, for
///   `2 <= c <= CHERN_MAX_CHILDREN`.
pub fn twisted_chern_identity(r: usize, d: usize) -> Result<ChernWitness> {
    if r == 0 || d == 0 {
        return Err(Error::InvalidInput("rank and dimension must be >= 1".into()));
    }
    let mut compared = 0;

    let nv = r + 1;
    let x = FormalChernPoly::var(nv, 0);
    let one = FormalChernPoly::one(nv);
    let one_plus_x = &one + &x;
    let lhs = (1..=r).fold(one.clone(), |acc, j| {
        &acc * &(&one_plus_x + &FormalChernPoly::var(nv, j))
    });
    let rhs = (0..=r).fold(FormalChernPoly::zero(nv), |acc, i| {
        let e = FormalChernPoly::elementary_symmetric(nv, 1..nv, i);
        &acc + &(&e * &one_plus_x.pow(r - i))
    });
    if lhs != rhs {
        return Err(Error::CrossCheck(format!(
            "Chern-root expansion fails for rank {r}"
        )));
    }
    compared += lhs.num_terms();

    let nv = d + 1;
    let x = FormalChernPoly::var(nv, 0);
    let one = FormalChernPoly::one(nv);
    let one_plus_x = &one + &x;
    let chern_t: Vec<FormalChernPoly> = (0..=d)
        .map(|i| FormalChernPoly::elementary_symmetric(nv, 1..nv, i))
        .collect();
    let total_t = chern_t.iter().fold(FormalChernPoly::zero(nv), |acc, c| &acc + c);
    let zeta = chern_t
        .iter()
        .enumerate()
        .fold(FormalChernPoly::zero(nv), |acc, (i, c)| {
            &acc + &(c * &one_plus_x.pow(d - i))
        });
    for c in 2..=CHERN_MAX_CHILDREN {
        let e = c - 1;
        let rank = d * e;
        let by_roots = (1..=d).fold(one.clone(), |acc, j| {
            &acc * &(&one_plus_x + &FormalChernPoly::var(nv, j)).pow(e)
        });
        let total_n = total_t.pow(e);
        let by_classes = (0..=rank).fold(FormalChernPoly::zero(nv), |acc, i| {
            let ci = total_n.homogeneous_part(1..nv, i as u32);
            &acc + &(&ci * &one_plus_x.pow(rank - i))
        });
        let by_zeta = zeta.pow(e);
        if by_roots != by_classes || by_classes != by_zeta {
            return Err(Error::CrossCheck(format!(
                "twisted normal-bundle identity fails for d = {d}, c = {c}"
            )));
        }
        compared += by_roots.num_terms();
    }

    Ok(ChernWitness {
        rank: r,
        dim: d,
        max_children: CHERN_MAX_CHILDREN,
        terms_compared: compared,
    })
}

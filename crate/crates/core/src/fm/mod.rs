//! Motive decomposition of the Fulton-MacPherson configuration space `X[n]`.
//!
//! The multiplicity of `h(X^k)(i)` in `h(X[n])` is computed two ways: as the
//! coefficient of `x^i t^n/n!` in `N^k/k!`, where `N` is the exponential
//! generating function of connected weighted nests, and by enumerating nests
//! directly. The connected series itself is produced three ways (direct
//! enumeration, the partition recursion, and solving the closed functional
//! equation term by term).

mod profile;
mod sigma_form;
mod table;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::algebra::{egf_exp, sigma, ExpSeries, IntPoly};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::nests::{
    enumerate_nests_capped, enumerate_partitions_capped, nest_stats, nest_weight_poly,
};

pub use profile::{BettiVector, RankProfile};
pub use sigma_form::{connected_in_sigma, format_sigma, substitute_sigma};
pub use table::{summand_label, DecompEntry, DecompTable};

pub(crate) type Multiplicities = BTreeMap<(usize, usize), BigUint>;

/// Computation context for one dimension `d`. Holds the memo of the
/// partition recursion and the solved generating function; sessions are
/// never shared between threads.
#[derive(Clone, Debug)]
pub struct FmSession {
    d: usize,
    limits: Limits,
    recursive: Vec<IntPoly>,
    series: Option<ExpSeries>,
}

impl FmSession {
    pub fn new(d: usize) -> Result<Self> {
        Self::with_limits(d, Limits::default())
    }

    pub fn with_limits(d: usize, limits: Limits) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        Ok(FmSession {
            d,
            limits,
            recursive: vec![IntPoly::zero()],
            series: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// `f_n` as the sum of `nest_weight_poly` over nests with one maximal block.
    pub fn f_direct(&self, n: usize) -> Result<IntPoly> {
        if n == 1 {
            return Ok(IntPoly::one());
        }
        let mut acc = IntPoly::zero();
        for s in enumerate_nests_capped(n, self.limits.nests)? {
            if nest_stats(&s).c == 1 {
                acc += &nest_weight_poly(&s, self.d);
            }
        }
        Ok(acc)
    }

    /// `f_n = sum over partitions {I_1..I_k} of [n] of f_|I_1|...f_|I_k| sigma_{k-1}`
    /// for `n >= 2`, memoized over smaller `n`.
    pub fn f_recursive(&mut self, n: usize) -> Result<IntPoly> {
        if n == 0 {
            return Err(Error::InvalidInput("f_n needs n >= 1".into()));
        }
        while self.recursive.len() <= n {
            let m = self.recursive.len();
            let f = if m == 1 {
                IntPoly::one()
            } else {
                let mut acc = IntPoly::zero();
                for p in enumerate_partitions_capped(m, self.limits.partitions)? {
                    let s = sigma(p.len() - 1, self.d);
                    if s.is_zero() {
                        continue;
                    }
                    let prod: IntPoly = p
                        .iter()
                        .map(|b| &self.recursive[b.count_ones() as usize])
                        .fold(s, |acc, f| &acc * f);
                    acc += &prod;
                }
                acc
            };
            self.recursive.push(f);
        }
        Ok(self.recursive[n].clone())
    }

    /// The solved series `N` through `t^order`, cached across calls.
    pub fn generating_function(&mut self, order: usize) -> Result<&ExpSeries> {
        let stale = self.series.as_ref().is_none_or(|s| s.order() < order);
        if stale {
            self.series = Some(solve_n(self.d, order)?);
        }
        Ok(self.series.as_ref().unwrap())
    }

    /// `N^k/k!` truncated at `t^n`, for `k = 0..=n`.
    fn powers(&mut self, n: usize) -> Result<Vec<ExpSeries>> {
        let big_n = self.generating_function(n)?.truncate(n);
        let mut out = vec![ExpSeries::one(n)];
        for k in 1..=n {
            let next = out[k - 1].mul(&big_n).div_exact_scalar(&BigInt::from(k))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Multiplicity of `h(X^k)(i)` in `h(X[n])` from the generating function.
    pub fn multiplicity(&mut self, n: usize, k: usize, i: usize) -> Result<BigUint> {
        check_nk(n, k)?;
        let p = self.generating_function(n)?.pow_over_factorial(k)?;
        to_count(p.extract(i as i64, n)?)
    }

    /// Multiplicity of `h(X^k)(i)` counted over nests with `k` maximal blocks.
    pub fn direct_multiplicity(&self, n: usize, k: usize, i: usize) -> Result<BigUint> {
        check_nk(n, k)?;
        let all = self.direct_multiplicities(n)?;
        Ok(all.get(&(k, i)).cloned().unwrap_or_default())
    }

    /// All nonzero multiplicities via `[x^i t^n/n!] N^k/k!`.
    pub fn gf_multiplicities(&mut self, n: usize) -> Result<Multiplicities> {
        check_n(n)?;
        let powers = self.powers(n)?;
        let mut out = Multiplicities::new();
        for (k, p) in powers.iter().enumerate().skip(1) {
            for (i, c) in p.coeff(n)?.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.insert((k, i), to_count(c.clone())?);
                }
            }
        }
        Ok(out)
    }

    /// All nonzero multiplicities by direct nest enumeration.
    pub fn direct_multiplicities(&self, n: usize) -> Result<Multiplicities> {
        check_n(n)?;
        let mut out = Multiplicities::new();
        for s in enumerate_nests_capped(n, self.limits.nests)? {
            let k = nest_stats(&s).c;
            for (i, c) in nest_weight_poly(&s, self.d).coeffs().iter().enumerate() {
                if !c.is_zero() {
                    *out.entry((k, i)).or_default() += to_count(c.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// All nonzero multiplicities from the bivariate series `exp(yN)`, with
    /// `y` packed as `x^B` for a `B` exceeding every twist that can occur.
    pub fn bivariate_multiplicities(&mut self, n: usize) -> Result<Multiplicities> {
        check_n(n)?;
        let stride = self.d * n + 1;
        let big_n = self.generating_function(n)?.truncate(n);
        let e = egf_exp(&big_n.scale(&IntPoly::monomial(stride, 1)))?;
        let mut out = Multiplicities::new();
        for (exp, c) in e.coeff(n)?.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.insert((exp / stride, exp % stride), to_count(c.clone())?);
            }
        }
        Ok(out)
    }

    /// Multiplicity of `h(Delta_P)(i)` for a partition `P` of `[n]` (blocks as
    /// bitmasks): `[x^i] prod_j f_|I_j|`.
    pub fn partition_multiplicity(&mut self, n: usize, partition: &[u32], i: usize) -> Result<BigUint> {
        check_n(n)?;
        let union = partition.iter().fold(0u32, |m, b| {
            if m & b != 0 {
                u32::MAX
            } else {
                m | b
            }
        });
        if union != crate::nests::full_mask(n) || partition.contains(&0) {
            return Err(Error::InvalidInput(format!("{partition:?} is not a partition of [{n}]")));
        }
        let series = self.generating_function(n)?;
        let prod: IntPoly = partition
            .iter()
            .map(|b| series.coeff(b.count_ones() as usize).cloned())
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .product();
        to_count(prod.coeff(i as i64))
    }

    /// The full table, computed from the generating function and by direct
    /// enumeration; the two must agree exactly.
    pub fn decomposition_table(&mut self, n: usize) -> Result<DecompTable> {
        let gf = self.gf_multiplicities(n)?;
        let direct = self.direct_multiplicities(n)?;
        if gf != direct {
            return Err(Error::CrossCheck(format!(
                "h(X[{n}]) for d = {}: generating function and nest enumeration differ\n{}",
                self.d,
                diff_report(&gf, &direct)
            )));
        }
        Ok(DecompTable::from_entries(n, self.d, gf))
    }

    /// Table from the generating function alone; usable past the nest cap.
    pub fn decomposition_table_unchecked(&mut self, n: usize) -> Result<DecompTable> {
        let gf = self.gf_multiplicities(n)?;
        Ok(DecompTable::from_entries(n, self.d, gf))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok(())
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    check_n(n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn to_count(c: BigInt) -> Result<BigUint> {
    c.to_biguint()
        .ok_or_else(|| Error::CrossCheck(format!("negative multiplicity {c}")))
}

fn diff_report(a: &Multiplicities, b: &Multiplicities) -> String {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    let zero = BigUint::zero();
    keys.into_iter()
        .filter_map(|key| {
            let (x, y) = (a.get(key).unwrap_or(&zero), b.get(key).unwrap_or(&zero));
            (x != y).then(|| format!("  (k={}, i={}): {x} vs {y}", key.0, key.1))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Solve `(1-x) x^d t + (1 - x^(d+1)) = exp(x^d N) - x^(d+1) exp(N)` for `N`
/// with zero constant term, through `t^order`.
///
/// At `t^n` the unknown `f_n` enters only linearly, as `(x^d - x^(d+1)) f_n`;
/// every other term involves `f_1..f_{n-1}`. Each step is an exact division by
/// `x^d (1 - x)`, and the finished series is substituted back into the
/// equation as a check.
pub fn solve_n(d: usize, order: usize) -> Result<ExpSeries> {
    if d == 0 || order == 0 {
        return Err(Error::InvalidInput("solve_n needs d >= 1 and order >= 1".into()));
    }
    let xd = IntPoly::monomial(d, 1);
    let xd1 = IntPoly::monomial(d + 1, 1);
    let divisor = &xd - &xd1;
    let binom = crate::algebra::binomial_rows(order);

    let mut f = vec![IntPoly::zero(); order + 1];
    // exp(x^d N) and exp(N), built with E_n = sum_i C(n-1, i-1) a_i E_{n-i}
    let mut exp_twisted = vec![IntPoly::one()];
    let mut exp_plain = vec![IntPoly::one()];
    for n in 1..=order {
        let mut rest_twisted = IntPoly::zero();
        let mut rest_plain = IntPoly::zero();
        for i in 1..n {
            let c = &binom[n - 1][i - 1];
            rest_twisted += &(&(&xd * &f[i]) * &exp_twisted[n - i]).scale(c);
            rest_plain += &(&f[i] * &exp_plain[n - i]).scale(c);
        }
        let lhs = if n == 1 {
            &IntPoly::from_i64s(&[1, -1]) * &xd
        } else {
            IntPoly::zero()
        };
        let numer = &(&lhs - &rest_twisted) + &(&xd1 * &rest_plain);
        let fnew = numer.div_exact(&divisor)?;
        exp_twisted.push(&(&xd * &fnew) + &rest_twisted);
        exp_plain.push(&fnew + &rest_plain);
        f[n] = fnew;
    }
    let series = ExpSeries::new(order, f);
    let residual = functional_equation_residual(d, &series)?;
    if !residual.is_zero() {
        return Err(Error::CrossCheck(format!(
            "solved series leaves residual {residual:?}"
        )));
    }
    Ok(series)
}

/// `(1-x) x^d t + (1 - x^(d+1)) - exp(x^d N) + x^(d+1) exp(N)`, truncated at
/// the order of `N`.
pub fn functional_equation_residual(d: usize, big_n: &ExpSeries) -> Result<ExpSeries> {
    let order = big_n.order();
    let xd = IntPoly::monomial(d, 1);
    let xd1 = IntPoly::monomial(d + 1, 1);
    let lhs = ExpSeries::t(order)
        .scale(&(&IntPoly::from_i64s(&[1, -1]) * &xd))
        .add(&ExpSeries::constant(order, &IntPoly::one() - &xd1));
    let twisted = egf_exp(&big_n.scale(&xd))?;
    let plain = egf_exp(big_n)?.scale(&xd1);
    Ok(lhs.sub(&twisted).add(&plain))
}

pub fn f_direct(n: usize, d: usize) -> Result<IntPoly> {
    FmSession::new(d)?.f_direct(n)
}

pub fn f_recursive(n: usize, d: usize) -> Result<IntPoly> {
    FmSession::new(d)?.f_recursive(n)
}

pub fn multiplicity(n: usize, d: usize, k: usize, i: usize) -> Result<BigUint> {
    FmSession::new(d)?.multiplicity(n, k, i)
}

pub fn partition_multiplicity(n: usize, d: usize, partition: &[u32], i: usize) -> Result<BigUint> {
    FmSession::new(d)?.partition_multiplicity(n, partition, i)
}

pub fn decomposition_table(n: usize, d: usize) -> Result<DecompTable> {
    FmSession::new(d)?.decomposition_table(n)
}

/// `rank A(X[n]) = sum_{k,i} mult(k, i) r_k`.
pub fn chow_rank(n: usize, d: usize, ranks: &RankProfile) -> Result<BigUint> {
    let table = FmSession::new(d)?.decomposition_table(n)?;
    table.chow_rank(ranks)
}

/// `sum_{k,i} mult(k, i) t^(2i) P(t)^k`: the Poincaré polynomial of `X[n]`
/// realized from the motive decomposition.
pub fn poincare(n: usize, d: usize, betti: &BettiVector) -> Result<IntPoly> {
    let table = FmSession::new(d)?.decomposition_table(n)?;
    table.poincare(betti)
}

/// `rank A(P^d[n])` as an integer polynomial in `d`.
///
/// At `x = 1` every `sigma_j` becomes `d j - 1`; the connected series is
/// rebuilt from the partition recursion with polynomial-in-`d` coefficients
/// and then `sum_k (d+1)^k [t^n/n!] N^k/k!` is formed.
pub fn rank_polynomial(n: usize) -> Result<IntPoly> {
    rank_polynomial_capped(n, Limits::default().partitions)
}

pub fn rank_polynomial_capped(n: usize, partition_cap: usize) -> Result<IntPoly> {
    check_n(n)?;
    let sigma_at_one = |j: usize| -> IntPoly {
        if j == 0 {
            IntPoly::zero()
        } else {
            IntPoly::from_i64s(&[-1, j as i64])
        }
    };
    let mut f = vec![IntPoly::zero(), IntPoly::one()];
    for m in 2..=n {
        let mut acc = IntPoly::zero();
        for p in enumerate_partitions_capped(m, partition_cap)? {
            if p.len() == 1 {
                continue;
            }
            let prod = p
                .iter()
                .map(|b| &f[b.count_ones() as usize])
                .fold(sigma_at_one(p.len() - 1), |acc, g| &acc * g);
            acc += &prod;
        }
        f.push(acc);
    }
    let big_n = ExpSeries::new(n, f);
    let d_plus_one = IntPoly::from_i64s(&[1, 1]);
    let mut total = IntPoly::zero();
    let mut power = ExpSeries::one(n);
    for k in 1..=n {
        power = power.mul(&big_n).div_exact_scalar(&BigInt::from(k))?;
        total += &(&d_plus_one.pow(k) * power.coeff(n)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nests::block_of;
    use num_traits::One;

    fn s(j: usize, d: usize) -> IntPoly {
        sigma(j, d)
    }

    #[test]
    fn f_small_cases() {
        for d in 1..=4 {
            assert!(f_direct(1, d).unwrap().is_one());
            assert_eq!(f_direct(2, d).unwrap(), s(1, d));
            assert_eq!(f_recursive(2, d).unwrap(), s(1, d));
            let f3 = &s(2, d) + &(&s(1, d) * &s(1, d)).scale(&BigInt::from(3));
            assert_eq!(f_recursive(3, d).unwrap(), f3);
            let f4 = &(&s(3, d) + &(&s(1, d) * &s(2, d)).scale(&BigInt::from(10)))
                + &s(1, d).pow(3).scale(&BigInt::from(15));
            assert_eq!(f_direct(4, d).unwrap(), f4);
        }
    }

    #[test]
    fn recursion_matches_enumeration() {
        for d in 1..=3 {
            let mut sess = FmSession::new(d).unwrap();
            for n in 1..=6 {
                assert_eq!(sess.f_recursive(n).unwrap(), sess.f_direct(n).unwrap(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn solver_first_term_and_residual() {
        for d in 1..=4 {
            let big_n = solve_n(d, 8).unwrap();
            assert!(big_n.coeff(0).unwrap().is_zero());
            assert!(big_n.coeff(1).unwrap().is_one());
            assert!(functional_equation_residual(d, &big_n).unwrap().is_zero());
        }
    }

    #[test]
    fn residual_detects_a_wrong_series() {
        let mut bad = solve_n(2, 4).unwrap().coeffs().to_vec();
        bad[3] = &bad[3] + &IntPoly::x();
        let bad = ExpSeries::new(4, bad);
        assert!(!functional_equation_residual(2, &bad).unwrap().is_zero());
    }

    #[test]
    fn n_equals_two() {
        for d in 1..=5 {
            let t = decomposition_table(2, d).unwrap();
            assert_eq!(t.get(2, 0), BigUint::one());
            for i in 1..d {
                assert_eq!(t.get(1, i), BigUint::one());
            }
            assert_eq!(t.entries().count(), d);
        }
    }

    #[test]
    fn n_equals_three_curves() {
        let t = decomposition_table(3, 1).unwrap();
        let got: Vec<_> = t.entries().map(|e| (e.k, e.i, e.mult.clone())).collect();
        assert_eq!(
            got,
            vec![(3, 0, BigUint::one()), (1, 1, BigUint::one())]
        );
    }

    #[test]
    fn gf_and_bivariate_agree() {
        for d in 1..=3 {
            let mut sess = FmSession::new(d).unwrap();
            for n in 1..=5 {
                assert_eq!(
                    sess.gf_multiplicities(n).unwrap(),
                    sess.bivariate_multiplicities(n).unwrap()
                );
            }
        }
    }

    #[test]
    fn partition_multiplicities_aggregate() {
        for d in 1..=3 {
            let mut sess = FmSession::new(d).unwrap();
            for n in 1..=5 {
                let table = sess.gf_multiplicities(n).unwrap();
                let mut agg = Multiplicities::new();
                for p in crate::nests::enumerate_partitions(n).unwrap() {
                    for i in 0..=d * n {
                        let m = sess.partition_multiplicity(n, &p, i).unwrap();
                        if !m.is_zero() {
                            *agg.entry((p.len(), i)).or_default() += m;
                        }
                    }
                }
                assert_eq!(agg, table, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn partition_multiplicity_examples() {
        let mut sess = FmSession::new(2).unwrap();
        let singles = [block_of(&[1]), block_of(&[2]), block_of(&[3])];
        assert_eq!(sess.partition_multiplicity(3, &singles, 0).unwrap(), BigUint::one());
        let p = [block_of(&[1, 2]), block_of(&[3])];
        assert_eq!(sess.partition_multiplicity(3, &p, 1).unwrap(), BigUint::one());
        assert!(sess.partition_multiplicity(3, &[block_of(&[1, 2])], 0).is_err());
        assert!(sess
            .partition_multiplicity(3, &[block_of(&[1, 2]), block_of(&[2, 3])], 0)
            .is_err());
    }

    #[test]
    fn multiplicity_bounds() {
        assert!(multiplicity(3, 2, 0, 0).is_err());
        assert!(multiplicity(3, 2, 4, 0).is_err());
        assert_eq!(multiplicity(4, 2, 4, 0).unwrap(), BigUint::one());
        assert_eq!(multiplicity(2, 2, 1, 1).unwrap(), BigUint::one());
    }

    #[test]
    fn rank_of_x1_is_r1() {
        let profile = RankProfile::new([(1, BigUint::from(7u32))]).unwrap();
        assert_eq!(chow_rank(1, 3, &profile).unwrap(), BigUint::from(7u32));
    }

    #[test]
    fn curves_have_no_twist_for_n2() {
        let p = poincare(2, 1, &BettiVector::projective(1)).unwrap();
        assert_eq!(p, IntPoly::from_i64s(&[1, 0, 1]).pow(2));
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(FmSession::new(0).is_err());
        assert!(solve_n(0, 3).is_err());
    }
}

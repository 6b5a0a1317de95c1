use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Truncated exponential generating function `sum_{n <= order} f_n(x) t^n / n!`.
///
/// Only the numerators `f_n` are stored; the `1/n!` is implicit in the
/// multiplication rule. Truncation order is fixed at construction and every
/// binary operation yields the minimum of its operands' orders.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpSeries {
    order: usize,
    coeffs: Vec<IntPoly>,
}

/// Row `n` of Pascal's triangle for every `n <= order`.
pub(crate) fn binomial_rows(order: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut row = vec![BigInt::one(); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

impl ExpSeries {
    pub fn zero(order: usize) -> Self {
        ExpSeries {
            order,
            coeffs: vec![IntPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, IntPoly::one())
    }

    pub fn constant(order: usize, c: IntPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = IntPoly::one();
        }
        s
    }

    /// Build from numerators `f_0, f_1, ...`; missing terms are zero and
    /// terms beyond `order` are dropped.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = IntPoly>) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    /// Numerator `f_n` of `t^n/n!`.
    pub fn coeff(&self, n: usize) -> Result<&IntPoly> {
        self.coeffs.get(n).ok_or(Error::BeyondTruncation {
            requested: n,
            order: self.order,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(IntPoly::is_zero)
    }

    /// Drop terms above `order`. Raising the order is not allowed.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "series order can only be lowered");
        ExpSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &ExpSeries) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            order,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b),
        )
    }

    pub fn sub(&self, other: &ExpSeries) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            order,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b),
        )
    }

    /// Multiply every coefficient by a polynomial in `x`.
    pub fn scale(&self, p: &IntPoly) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|c| c * p))
    }

    /// Binomial-convolution product.
    pub fn mul(&self, other: &ExpSeries) -> Self {
        let order = self.order.min(other.order);
        let binom = binomial_rows(order);
        let mut out = Self::zero(order);
        for n in 0..=order {
            let mut acc = IntPoly::zero();
            for i in 0..=n {
                let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += &(a * b).scale(&binom[n][i]);
            }
            out.coeffs[n] = acc;
        }
        out
    }

    /// `self^k / k!`, built by repeated multiplication with an exact division
    /// by `j` after the `j`-th factor.
    pub fn pow_over_factorial(&self, k: usize) -> Result<Self> {
        if k > 0 && !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::one(self.order);
        for j in 1..=k {
            acc = acc.mul(self).div_exact_scalar(&BigInt::from(j))?;
        }
        Ok(acc)
    }

    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact_scalar(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Integer coefficient of `x^i t^n / n!`.
    pub fn extract(&self, i: i64, n: usize) -> Result<BigInt> {
        Ok(self.coeff(n)?.coeff(i))
    }

    /// Substitute `x = value` in every coefficient.
    pub fn eval_x(&self, value: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.eval(value)).collect()
    }
}

impl fmt::Debug for ExpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpSeries[order {}](", self.order)?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) t^{n}/{n}!")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

/// Product of exponential generating functions.
pub fn egf_mul(a: &ExpSeries, b: &ExpSeries) -> ExpSeries {
    a.mul(b)
}

/// `exp(a)` for a series without constant term.
///
/// Uses the derivative recurrence `E' = a' E`, i.e.
/// `E_n = sum_{i=1}^{n} C(n-1, i-1) a_i E_{n-i}`, which involves no division.
pub fn egf_exp(a: &ExpSeries) -> Result<ExpSeries> {
    if !a.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let order = a.order;
    let binom = binomial_rows(order);
    let mut e = ExpSeries::one(order);
    for n in 1..=order {
        let mut acc = IntPoly::zero();
        for i in 1..=n {
            let (ai, rest) = (&a.coeffs[i], &e.coeffs[n - i]);
            if ai.is_zero() || rest.is_zero() {
                continue;
            }
            acc += &(ai * rest).scale(&binom[n - 1][i - 1]);
        }
        e.coeffs[n] = acc;
    }
    Ok(e)
}

/// `E_g(inner) = sum_k g_k inner^k / k!` with `g_k = outer[k]`.
///
/// `outer[0]` is the constant term of the result.
pub fn egf_compose(outer: &[IntPoly], inner: &ExpSeries) -> Result<ExpSeries> {
    if !inner.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let order = inner.order;
    let mut out = ExpSeries::zero(order);
    let mut power = ExpSeries::one(order);
    for (k, g) in outer.iter().enumerate().take(order + 1) {
        if k > 0 {
            power = power
                .mul(inner)
                .div_exact_scalar(&BigInt::from(k))?;
        }
        if !g.is_zero() {
            out = out.add(&power.scale(g));
        }
    }
    Ok(out)
}

/// Integer coefficient of `x^i t^n / n!`; zero for negative `i`.
pub fn extract(series: &ExpSeries, i: i64, n: usize) -> Result<BigInt> {
    series.extract(i, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> IntPoly {
        IntPoly::x()
    }

    #[test]
    fn t_times_t() {
        let t = ExpSeries::t(4);
        let sq = egf_mul(&t, &t);
        assert_eq!(sq.coeff(2).unwrap(), &IntPoly::constant(2));
        assert!(sq.coeff(1).unwrap().is_zero());
        assert!(sq.coeff(3).unwrap().is_zero());
    }

    #[test]
    fn order_is_minimum_of_operands() {
        let a = ExpSeries::t(3);
        let b = ExpSeries::one(7);
        assert_eq!(egf_mul(&a, &b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn exp_of_zero_t_and_xt() {
        let order = 6;
        assert_eq!(egf_exp(&ExpSeries::zero(order)).unwrap(), ExpSeries::one(order));
        let e = egf_exp(&ExpSeries::t(order)).unwrap();
        for n in 0..=order {
            assert_eq!(e.coeff(n).unwrap(), &IntPoly::one());
        }
        let ext = egf_exp(&ExpSeries::t(order).scale(&x())).unwrap();
        for n in 0..=order {
            assert_eq!(ext.coeff(n).unwrap(), &x().pow(n));
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(matches!(
            egf_exp(&ExpSeries::one(3)),
            Err(Error::NonzeroConstantTerm)
        ));
        assert!(egf_compose(&[IntPoly::one()], &ExpSeries::one(3)).is_err());
    }

    #[test]
    fn compose_with_all_ones_is_exp() {
        let t = ExpSeries::t(6);
        let ones = vec![IntPoly::one(); 7];
        assert_eq!(egf_compose(&ones, &t).unwrap(), egf_exp(&t).unwrap());
    }

    #[test]
    fn compose_with_zero_inner_is_constant() {
        let g = vec![IntPoly::from_i64s(&[3, 1]), IntPoly::x(), IntPoly::one()];
        let out = egf_compose(&g, &ExpSeries::zero(5)).unwrap();
        assert_eq!(out, ExpSeries::constant(5, g[0].clone()));
    }

    #[test]
    fn extract_beyond_order_fails() {
        let t = ExpSeries::t(3);
        assert!(matches!(
            extract(&t, 0, 4),
            Err(Error::BeyondTruncation { requested: 4, order: 3 })
        ));
        assert_eq!(extract(&t, -2, 1).unwrap(), BigInt::from(0));
    }

    #[test]
    fn pow_over_factorial_of_t() {
        // t^k/k! has f_k = 1
        let t = ExpSeries::t(6);
        for k in 0..=6 {
            let p = t.pow_over_factorial(k).unwrap();
            for n in 0..=6 {
                let expect = if n == k { IntPoly::one() } else { IntPoly::zero() };
                assert_eq!(p.coeff(n).unwrap(), &expect);
            }
        }
    }

    fn zero_const_series(order: usize) -> impl Strategy<Value = ExpSeries> {
        prop::collection::vec(prop::collection::vec(-4i64..5, 0..3), order).prop_map(move |cs| {
            ExpSeries::new(
                order,
                std::iter::once(IntPoly::zero()).chain(cs.iter().map(|c| IntPoly::from_i64s(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exp_of_sum_is_product_of_exps(a in zero_const_series(6), b in zero_const_series(6)) {
            let lhs = egf_exp(&a.add(&b)).unwrap();
            let rhs = egf_mul(&egf_exp(&a).unwrap(), &egf_exp(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_with_ones_matches_exp(a in zero_const_series(6)) {
            let ones = vec![IntPoly::one(); 7];
            prop_assert_eq!(egf_compose(&ones, &a).unwrap(), egf_exp(&a).unwrap());
        }

        // E_g(E_h(F)) = E_{g o h}(F) where g o h is itself obtained by composing
        // the series with numerators g into the series with numerators h.
        #[test]
        fn compose_is_associative(
            g in prop::collection::vec(prop::collection::vec(-3i64..4, 0..2), 7),
            h in zero_const_series(6),
            f in zero_const_series(6),
        ) {
            let g: Vec<IntPoly> = g.iter().map(|c| IntPoly::from_i64s(c)).collect();
            let h_of_f = egf_compose(h.coeffs(), &f).unwrap();
            let lhs = egf_compose(&g, &h_of_f).unwrap();
            let g_of_h = egf_compose(&g, &h).unwrap();
            let rhs = egf_compose(g_of_h.coeffs(), &f).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

//! Poincaré polynomials of symmetric products `X^(n)`, read off from
//! MacDonald's generating function
//! `sum_n P(X^(n)) T^n = prod_{j odd} (1 + t^j T)^{b_j} / prod_{j even} (1 - t^j T)^{b_j}`.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::fm::BettiVector;

/// Power series in `T` with polynomial-in-`t` coefficients, truncated at `T^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    coeffs: Vec<IntPoly>,
}

impl PoincareSeries {
    /// MacDonald's series for `X`, through `T^order`.
    pub fn macdonald(betti: &BettiVector, order: usize) -> Result<Self> {
        let mut acc = vec![IntPoly::zero(); order + 1];
        acc[0] = IntPoly::one();
        for (j, &b) in betti.numbers().iter().enumerate() {
            if b == 0 {
                continue;
            }
            let b = BigInt::from(b);
            // (1 + u)^b or (1 - u)^(-b) with u = t^j T
            let factor: Vec<IntPoly> = (0..=order)
                .map(|k| {
                    let c = if j % 2 == 1 {
                        binomial(b.clone(), BigInt::from(k))
                    } else {
                        binomial(&b + BigInt::from(k) - 1, BigInt::from(k))
                    };
                    IntPoly::monomial(j * k, c)
                })
                .collect();
            acc = mul_truncated(&acc, &factor, order);
        }
        let series = PoincareSeries { coeffs: acc };
        series.check()?;
        Ok(series)
    }

    fn check(&self) -> Result<()> {
        if !self.coeffs[0].is_one() {
            return Err(Error::CrossCheck("T^0 coefficient of a Poincaré series is not 1".into()));
        }
        if let Some(n) = self.coeffs.iter().position(|c| !c.is_nonnegative()) {
            return Err(Error::CrossCheck(format!(
                "negative Betti number in P(X^({n})): {}",
                self.coeffs[n].display_in("t")
            )));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `P(X^(n))`.
    pub fn coeff(&self, n: usize) -> Result<&IntPoly> {
        self.coeffs.get(n).ok_or(Error::BeyondTruncation {
            requested: n,
            order: self.order(),
        })
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }
}

fn mul_truncated(a: &[IntPoly], b: &[IntPoly], order: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Poincaré polynomial of the `n`-th symmetric product of `X`.
pub fn symmetric_product_poincare(betti: &BettiVector, n: usize) -> Result<IntPoly> {
    Ok(PoincareSeries::macdonald(betti, n)?.coeff(n)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn point_and_projective_line() {
        let point = BettiVector::new(vec![1]).unwrap();
        let p1 = BettiVector::projective(1);
        for n in 0..=8 {
            assert!(symmetric_product_poincare(&point, n).unwrap().is_one());
            let expect = IntPoly::from_coeffs(
                (0..=2 * n).map(|e| BigInt::from(u8::from(e % 2 == 0))).collect(),
            );
            assert_eq!(symmetric_product_poincare(&p1, n).unwrap(), expect);
        }
    }

    #[test]
    fn first_symmetric_power_is_x() {
        for b in [BettiVector::projective(3), BettiVector::curve(2), BettiVector::new(vec![1, 4, 6, 4, 1]).unwrap()] {
            assert_eq!(symmetric_product_poincare(&b, 1).unwrap(), b.poincare());
        }
    }

    #[test]
    fn curve_second_power_by_hand() {
        // T^2 coefficient of (1+tT)^{2g} / ((1-T)(1-t^2 T)): sum over a+b+c = 2
        // of C(2g, a) t^a t^{2c}
        for g in 0..=3u64 {
            let mut expect = IntPoly::zero();
            for a in 0..=2usize {
                for c in 0..=(2 - a) {
                    let coeff = binomial(BigInt::from(2 * g), BigInt::from(a));
                    expect += &IntPoly::monomial(a + 2 * c, coeff);
                }
            }
            let got = symmetric_product_poincare(&BettiVector::curve(g), 2).unwrap();
            assert_eq!(got, expect, "g={g}");
        }
    }

    #[test]
    fn odd_classes_stay_nonnegative() {
        for g in 0..=3 {
            let s = PoincareSeries::macdonald(&BettiVector::curve(g), 6).unwrap();
            assert!(s.coeffs().iter().all(IntPoly::is_nonnegative));
        }
    }

    #[test]
    fn value_at_one() {
        // at t = 1: (1+T)^{b_odd} / (1-T)^{b_even}
        let b = BettiVector::curve(2);
        let s = PoincareSeries::macdonald(&b, 5).unwrap();
        let one = BigInt::from(1);
        for n in 0..=5usize {
            let mut expect = BigInt::from(0);
            for a in 0..=n {
                expect += binomial(BigInt::from(4), BigInt::from(a))
                    * binomial(BigInt::from(2 + (n - a) - 1), BigInt::from(n - a));
            }
            assert_eq!(s.coeff(n).unwrap().eval(&one), expect);
        }
        assert!(s.coeff(6).is_err());
    }
}

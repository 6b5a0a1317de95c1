//! Exact polynomial and exponential-generating-function arithmetic.

mod chern;
mod poly;
mod series;

pub use chern::{twisted_chern_identity, ChernWitness, FormalChernPoly, CHERN_MAX_CHILDREN};
pub use poly::IntPoly;
pub use series::{egf_compose, egf_exp, egf_mul, extract, ExpSeries};
pub(crate) use series::binomial_rows;

/// `sigma_j = x + x^2 + ... + x^(d*j - 1)`, zero for `j = 0` and whenever the
/// range is empty (so `sigma_1 = 0` when `d = 1`).
pub fn sigma(j: usize, d: usize) -> IntPoly {
    if j == 0 || d * j < 2 {
        return IntPoly::zero();
    }
    IntPoly::geometric_range(1, d * j - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_values() {
        assert!(sigma(0, 3).is_zero());
        assert!(sigma(1, 1).is_zero());
        assert_eq!(sigma(2, 2), IntPoly::from_i64s(&[0, 1, 1, 1]));
        assert_eq!(sigma(1, 2), IntPoly::x());
        assert_eq!(sigma(2, 1), IntPoly::x());
    }

    #[test]
    fn sigma_is_palindromic() {
        for j in 1..=8 {
            for d in 1..=8 {
                let s = sigma(j, d);
                if d * j >= 2 {
                    assert!(s.is_palindromic_on(1, d * j - 1), "j={j} d={d}");
                } else {
                    assert!(s.is_zero());
                }
            }
        }
    }
}

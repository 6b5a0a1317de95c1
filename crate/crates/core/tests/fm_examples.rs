use num_bigint::{BigInt, BigUint};
use wonderful::algebra::{sigma, IntPoly};
use wonderful::fm::{
    chow_rank, decomposition_table, f_direct, multiplicity, poincare, BettiVector, FmSession,
    RankProfile,
};
use wonderful::nests::{enumerate_nests, nest_stats, nest_weight_poly};

#[test]
fn genfun_for_curves() {
    // d = 1 kills sigma_1, leaving f_3 = sigma_2 and f_4 = sigma_3
    let mut s = FmSession::new(1).unwrap();
    assert!(s.f_recursive(2).unwrap().is_zero());
    assert_eq!(s.f_recursive(3).unwrap(), IntPoly::x());
    assert_eq!(s.f_recursive(4).unwrap(), IntPoly::from_i64s(&[0, 1, 1]));
    assert_eq!(f_direct(2, 2).unwrap(), IntPoly::x());
}

#[test]
fn poincare_of_blown_up_square() {
    // X[2] = Bl_diag(X^2) for X = P^2: P(X)^2 + t^2 P(X)
    let p = BettiVector::projective(2).poincare();
    let expect = &(&p * &p) + &p.shift(2);
    assert_eq!(poincare(2, 2, &BettiVector::projective(2)).unwrap(), expect);
}

#[test]
fn poincare_at_one_is_chow_rank() {
    for d in 1..=3 {
        for n in 1..=5 {
            let p = poincare(n, d, &BettiVector::projective(d)).unwrap();
            let r = chow_rank(n, d, &RankProfile::projective(d, n)).unwrap();
            assert_eq!(p.eval(&BigInt::from(1)), BigInt::from(r), "n={n} d={d}");
        }
    }
}

#[test]
fn total_count_at_x_equals_one() {
    for d in 1..=3 {
        for n in 1..=6 {
            let labeled: BigInt = enumerate_nests(n)
                .unwrap()
                .map(|s| nest_weight_poly(&s, d).eval(&BigInt::from(1)))
                .sum();
            let table = decomposition_table(n, d).unwrap();
            assert_eq!(BigInt::from(table.summand_count()), labeled);
        }
    }
}

#[test]
fn curves_keep_only_wide_nodes() {
    // for d = 1 a binary node has an empty weight range
    for n in 2..=6 {
        for s in enumerate_nests(n).unwrap() {
            let st = nest_stats(&s);
            if st.children.values().any(|&c| c == 2) {
                assert!(nest_weight_poly(&s, 1).is_zero());
            }
        }
    }
}

#[test]
fn three_points_min_formula() {
    for d in 2..=4 {
        for i in 1..2 * d {
            let expect = (3 * i - 2).min(6 * d - 3 * i - 2);
            assert_eq!(multiplicity(3, d, 1, i).unwrap(), BigUint::from(expect));
        }
    }
}

#[test]
fn sigma_substitution_at_one() {
    for d in 1..=5 {
        for j in 1..=4 {
            assert_eq!(sigma(j, d).eval(&BigInt::from(1)), BigInt::from(d * j - 1));
        }
    }
}

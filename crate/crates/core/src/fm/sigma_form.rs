use num_bigint::BigInt;

use crate::algebra::{FormalChernPoly, IntPoly};
use crate::error::Result;
use crate::nests::enumerate_partitions_capped;

/// `f_1..f_order` as integer polynomials in `sigma_1, sigma_2, ...`, from the
/// partition recursion with the `sigma_j` left symbolic. Variable `j` of each
/// result is `sigma_j` (variable 0 is unused).
pub fn connected_in_sigma(order: usize, partition_cap: usize) -> Result<Vec<FormalChernPoly>> {
    let nv = order.max(1);
    let mut f = vec![FormalChernPoly::zero(nv), FormalChernPoly::one(nv)];
    for m in 2..=order {
        let mut acc = FormalChernPoly::zero(nv);
        for p in enumerate_partitions_capped(m, partition_cap)? {
            if p.len() == 1 {
                continue;
            }
            let prod = p
                .iter()
                .map(|b| &f[b.count_ones() as usize])
                .fold(FormalChernPoly::var(nv, p.len() - 1), |acc, g| &acc * g);
            acc = &acc + &prod;
        }
        f.push(acc);
    }
    Ok(f.split_off(1))
}

/// Substitute `sigma_j := values[j]`.
pub fn substitute_sigma(p: &FormalChernPoly, values: &[IntPoly]) -> IntPoly {
    p.terms()
        .map(|(e, c)| {
            e.iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(j, &k)| values[j].pow(k as usize))
                .fold(IntPoly::constant(c.clone()), |acc, v| &acc * &v)
        })
        .sum()
}

/// Lowest total degree first, e.g. `s4 + 10 s2^2 + 15 s1 s3 + ...`.
pub fn format_sigma(p: &FormalChernPoly) -> String {
    let mut terms: Vec<(&[u32], &BigInt)> = p.terms().collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), e.to_vec()));
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let negative = c.sign() == num_bigint::Sign::Minus;
        if idx > 0 {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        let mag = c.magnitude();
        let mut factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, k)| **k > 0)
            .map(|(j, &k)| if k == 1 { format!("s{j}") } else { format!("s{j}^{k}") })
            .collect();
        if factors.is_empty() || *mag != 1u32.into() {
            factors.insert(0, mag.to_string());
        }
        out.push_str(&factors.join(" "));
    }
    out
}

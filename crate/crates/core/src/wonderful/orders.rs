use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::Arrangement;

/// Resolves a blow-up order to stratum indices. It must list every building
/// element once, and a center contained in another must come first.
pub fn check_order(arr: &Arrangement, order: &[String]) -> Result<Vec<usize>> {
    let idx = order.iter().map(|id| arr.lookup(id)).collect::<Result<Vec<_>>>()?;
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    if sorted != arr.building() {
        return Err(Error::IncompatibleOrder(format!(
            "{order:?} is not an ordering of the building set {:?}",
            arr.names(arr.building())
        )));
    }
    for (p, &a) in idx.iter().enumerate() {
        if let Some(&b) = idx[p + 1..].iter().find(|&&b| arr.strictly_contained(b, a)) {
            return Err(Error::IncompatibleOrder(format!(
                "{:?} is blown up before {:?}, which it contains",
                arr.id(a),
                arr.id(b)
            )));
        }
    }
    Ok(idx)
}

/// Building elements not containing any element of `remaining`, other than itself.
fn minimal_remaining(arr: &Arrangement, remaining: &[usize]) -> Vec<usize> {
    remaining
        .iter()
        .copied()
        .filter(|&a| !remaining.iter().any(|&b| arr.strictly_contained(b, a)))
        .collect()
}

/// Every admissible order, or an error if there are more than `limit`.
pub fn all_admissible_orders(arr: &Arrangement, limit: usize) -> Result<Vec<Vec<String>>> {
    fn go(
        arr: &Arrangement,
        remaining: &mut Vec<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<String>>,
        limit: usize,
    ) -> Result<()> {
        if remaining.is_empty() {
            if out.len() == limit {
                return Err(Error::cap("admissible blow-up orders", limit + 1, limit));
            }
            out.push(cur.iter().map(|&s| arr.id(s).to_string()).collect());
            return Ok(());
        }
        for g in minimal_remaining(arr, remaining) {
            let pos = remaining.iter().position(|&x| x == g).unwrap();
            remaining.remove(pos);
            cur.push(g);
            go(arr, remaining, cur, out, limit)?;
            cur.pop();
            remaining.insert(pos, g);
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(arr, &mut arr.building().to_vec(), &mut Vec::new(), &mut out, limit)?;
    Ok(out)
}

/// `count` admissible orders drawn with a seeded generator: each step picks
/// uniformly among the centers whose sub-centers are all placed. Repeats are
/// possible when there are few orders.
pub fn sample_admissible_orders(arr: &Arrangement, count: usize, seed: u64) -> Vec<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut remaining = arr.building().to_vec();
            let mut order = Vec::with_capacity(remaining.len());
            while !remaining.is_empty() {
                let g = *minimal_remaining(arr, &remaining).choose(&mut rng).unwrap();
                remaining.retain(|&x| x != g);
                order.push(arr.id(g).to_string());
            }
            order
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{decompose, decompose_iterative, fm_arrangement};
    use super::*;

    #[test]
    fn three_points_have_six_orders() {
        // the small diagonal first, then the three pairwise diagonals in any order
        let arr = fm_arrangement(3, 2).unwrap();
        let orders = all_admissible_orders(&arr, 100).unwrap();
        assert_eq!(orders.len(), 6);
        assert!(orders.iter().all(|o| o[0] == "D(1,2,3)"));
        let closed = decompose(&arr).unwrap();
        for o in &orders {
            assert_eq!(decompose_iterative(&arr, o).unwrap(), closed);
        }
    }

    #[test]
    fn bad_orders() {
        let arr = fm_arrangement(3, 2).unwrap();
        let wrong: Vec<String> = ["D(1,2)", "D(1,2,3)", "D(1,3)", "D(2,3)"].map(String::from).into();
        assert!(matches!(check_order(&arr, &wrong), Err(Error::IncompatibleOrder(_))));
        let short: Vec<String> = ["D(1,2,3)", "D(1,2)"].map(String::from).into();
        assert!(check_order(&arr, &short).is_err());
        assert!(decompose_iterative(&arr, &wrong).is_err());
    }

    #[test]
    fn samples_are_admissible_and_reproducible() {
        let arr = fm_arrangement(4, 1).unwrap();
        let a = sample_admissible_orders(&arr, 20, 7);
        assert_eq!(a, sample_admissible_orders(&arr, 20, 7));
        for o in &a {
            check_order(&arr, o).unwrap();
        }
        assert!(all_admissible_orders(&arr, 10).is_err());
    }
}

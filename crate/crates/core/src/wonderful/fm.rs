use crate::error::{Error, Result};
use crate::nests::{block_elements, enumerate_partitions_capped};

use super::{AmbientDoc, Arrangement, ArrangementDoc, StratumDoc};

/// Largest `n` for which the polydiagonal arrangement is built; the meet
/// table is cubic in the number of set partitions.
pub const FM_ARRANGEMENT_CAP: usize = 6;

/// Id of the polydiagonal where the points in each block coincide, e.g.
/// `D(1,2|3,4)`. Singleton blocks are dropped; no blocks at all gives the
/// ambient `X^n` only through [`fm_arrangement`].
pub fn fm_stratum_id(blocks: &[&[usize]]) -> String {
    let mut parts: Vec<Vec<usize>> = blocks
        .iter()
        .filter(|b| b.len() >= 2)
        .map(|b| {
            let mut v = b.to_vec();
            v.sort_unstable();
            v
        })
        .collect();
    parts.sort();
    let text: Vec<String> = parts
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("D({})", text.join("|"))
}

fn id_of(partition: &[u32], n: usize) -> String {
    if partition.len() == n {
        return format!("X^{n}");
    }
    let blocks: Vec<Vec<usize>> = partition.iter().map(|&b| block_elements(b)).collect();
    let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
    fm_stratum_id(&refs)
}

/// `p` is obtained from `q` by merging two blocks.
fn merges_two(p: &[u32], q: &[u32]) -> bool {
    p.len() + 1 == q.len() && q.iter().all(|b| p.iter().any(|a| a & b == *b))
}

/// The polydiagonals of `X^n`: one stratum of dimension `d * blocks` per set
/// partition, ordered by refinement, with the diagonals `D(I)` as building set.
pub fn fm_arrangement(n: usize, d: usize) -> Result<Arrangement> {
    if n < 2 || d == 0 {
        return Err(Error::InvalidInput("fm_arrangement needs n >= 2 and d >= 1".into()));
    }
    let parts: Vec<Vec<u32>> = enumerate_partitions_capped(n, FM_ARRANGEMENT_CAP)?.collect();
    let ids: Vec<String> = parts.iter().map(|p| id_of(p, n)).collect();
    let mut strata = Vec::new();
    let mut building = Vec::new();
    for (p, id) in parts.iter().zip(&ids) {
        if p.len() == n {
            continue;
        }
        let contained_in = parts
            .iter()
            .zip(&ids)
            .filter(|(q, _)| q.len() < n && merges_two(p, q))
            .map(|(_, id)| id.clone())
            .collect();
        strata.push(StratumDoc {
            id: id.clone(),
            dim: d * p.len(),
            contained_in,
        });
        if p.iter().filter(|b| b.count_ones() >= 2).count() == 1 {
            building.push(id.clone());
        }
    }
    Arrangement::from_document(ArrangementDoc {
        ambient: AmbientDoc {
            id: format!("X^{n}"),
            dim: d * n,
        },
        strata,
        building,
        factors: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let a = fm_arrangement(2, 3).unwrap();
        assert_eq!(a.len(), 2);
        let diag = a.lookup("D(1,2)").unwrap();
        assert_eq!(a.building(), &[diag]);
        assert_eq!(a.dim(0) - a.dim(diag), 3);
    }

    #[test]
    fn three_points() {
        let a = fm_arrangement(3, 2).unwrap();
        let small = a.lookup("D(1,2,3)").unwrap();
        assert_eq!(a.dim(small), 2);
        assert_eq!(a.factors(small), &[small]);
        let d12 = a.lookup("D(1,2)").unwrap();
        let d13 = a.lookup("D(1,3)").unwrap();
        assert_eq!(a.meet(d12, d13), Some(small));
        assert_eq!(a.building().len(), 4);
    }

    #[test]
    fn ids_are_canonical() {
        assert_eq!(fm_stratum_id(&[&[4, 3], &[2, 1], &[5]]), "D(1,2|3,4)");
        let a = fm_arrangement(4, 1).unwrap();
        let s = a.lookup("D(1,2|3,4)").unwrap();
        let f = a.names(a.factors(s));
        assert_eq!(f, vec!["D(1,2)", "D(3,4)"]);
    }

    #[test]
    fn rejects_small_input() {
        assert!(fm_arrangement(1, 2).is_err());
        assert!(fm_arrangement(3, 0).is_err());
    }
}

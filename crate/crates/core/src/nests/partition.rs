use crate::error::{Error, Result};

/// Default largest ground set for which partitions are enumerated.
pub const DEFAULT_PARTITION_CAP: usize = 12;

/// Bitmask of the ground set `{1, ..., n}` (element `i` is bit `i - 1`).
pub fn full_mask(n: usize) -> u32 {
    assert!(n <= 31, "ground sets are limited to 31 elements");
    (1u32 << n) - 1
}

/// Elements of a bitmask block, 1-based and increasing.
pub fn block_elements(block: u32) -> Vec<usize> {
    (0..32).filter(|b| block >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Bitmask with the given 1-based elements.
pub fn block_of(elements: &[usize]) -> u32 {
    elements.iter().fold(0, |m, &e| {
        assert!((1..=31).contains(&e), "element {e} out of range");
        m | 1 << (e - 1)
    })
}

/// Streams every set partition of a ground set exactly once, in
/// restricted-growth-string order. Each item lists the blocks as bitmasks,
/// ordered by their smallest element.
#[derive(Clone, Debug)]
pub struct Partitions {
    elements: Vec<u32>,
    rgs: Vec<usize>,
    done: bool,
}

impl Partitions {
    /// Partitions of the elements of `mask`. The empty set has one (empty) partition.
    pub fn of_mask(mask: u32) -> Self {
        let elements: Vec<u32> = (0..32).filter(|b| mask >> b & 1 == 1).map(|b| 1 << b).collect();
        let rgs = vec![0; elements.len()];
        Partitions {
            elements,
            rgs,
            done: false,
        }
    }

    fn current(&self) -> Vec<u32> {
        let nblocks = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![0u32; nblocks];
        for (e, &b) in self.elements.iter().zip(&self.rgs) {
            blocks[b] |= e;
        }
        blocks
    }

    fn advance(&mut self) {
        // a[i] may grow up to 1 + max(a[0..i])
        let n = self.rgs.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.rgs[i - 1]);
        }
        for i in (1..n).rev() {
            if self.rgs[i] <= prefix_max[i] {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// All set partitions of `{1, ..., n}`, refusing `n` above [`DEFAULT_PARTITION_CAP`].
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    enumerate_partitions_capped(n, DEFAULT_PARTITION_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Partitions> {
    if n == 0 {
        return Err(Error::InvalidInput("partitions need n >= 1".into()));
    }
    if n > cap || n > 31 {
        return Err(Error::cap("set partitions", n, cap.min(31)));
    }
    Ok(Partitions::of_mask(full_mask(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // Bell numbers via B(n+1) = sum_k C(n,k) B(k)
    fn bell(n: usize) -> u64 {
        let mut b = vec![1u64];
        for m in 0..n {
            let mut c = 1u64;
            let mut s = 0u64;
            for (k, bk) in b.iter().enumerate() {
                s += c * bk;
                c = c * (m - k) as u64 / (k + 1) as u64;
            }
            b.push(s);
        }
        b[n]
    }

    #[test]
    fn counts_match_bell_numbers() {
        assert_eq!(enumerate_partitions(1).unwrap().count(), 1);
        assert_eq!(enumerate_partitions(3).unwrap().count(), 5);
        assert_eq!(bell(5), 52);
        for n in 1..=9 {
            assert_eq!(enumerate_partitions(n).unwrap().count() as u64, bell(n), "n={n}");
        }
    }

    #[test]
    fn partitions_are_distinct_and_cover() {
        let n = 6;
        let mut seen = HashSet::new();
        for p in enumerate_partitions(n).unwrap() {
            let mut union = 0;
            for &b in &p {
                assert_ne!(b, 0);
                assert_eq!(union & b, 0);
                union |= b;
            }
            assert_eq!(union, full_mask(n));
            let mut key = p.clone();
            key.sort();
            assert!(seen.insert(key));
        }
    }

    #[test]
    fn restricted_growth_order() {
        let got: Vec<Vec<u32>> = enumerate_partitions(3).unwrap().collect();
        let b = |e: &[usize]| block_of(e);
        assert_eq!(
            got,
            vec![
                vec![b(&[1, 2, 3])],
                vec![b(&[1, 2]), b(&[3])],
                vec![b(&[1, 3]), b(&[2])],
                vec![b(&[1]), b(&[2, 3])],
                vec![b(&[1]), b(&[2]), b(&[3])],
            ]
        );
    }

    #[test]
    fn cap_and_zero_are_errors() {
        assert!(matches!(
            enumerate_partitions(13),
            Err(Error::CapExceeded { n: 13, cap: 12, .. })
        ));
        assert!(enumerate_partitions(0).is_err());
        assert!(enumerate_partitions_capped(13, 13).is_ok());
    }

    #[test]
    fn sub_mask_partitions() {
        let mask = block_of(&[2, 4, 5]);
        let parts: Vec<_> = Partitions::of_mask(mask).collect();
        assert_eq!(parts.len(), 5);
        assert!(parts.iter().all(|p| p.iter().fold(0, |m, b| m | b) == mask));
        assert_eq!(Partitions::of_mask(0).count(), 1);
    }
}

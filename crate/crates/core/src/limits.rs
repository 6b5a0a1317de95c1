use crate::nests::{DEFAULT_NEST_CAP, DEFAULT_PARTITION_CAP};

/// Environment variable overriding the enumeration cap on `n`.
pub const CAP_ENV_VAR: &str = "WONDERFUL_CAP_N";

/// Largest ground-set sizes for the exponential-cost enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Nests of `[n]` and labeled weighted nests.
    pub nests: usize,
    /// Unlabeled weighted forests.
    pub forests: usize,
    /// Set partitions of `[n]`.
    pub partitions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            nests: DEFAULT_NEST_CAP,
            forests: DEFAULT_NEST_CAP,
            partitions: DEFAULT_PARTITION_CAP,
        }
    }
}

impl Limits {
    /// Every cap set to `n` (partitions never below their default).
    pub fn uniform(n: usize) -> Self {
        Limits {
            nests: n,
            forests: n,
            partitions: n.max(DEFAULT_PARTITION_CAP),
        }
    }

    /// Defaults, overridden by `WONDERFUL_CAP_N` when it holds an integer.
    pub fn from_env() -> Self {
        match std::env::var(CAP_ENV_VAR).ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Self::uniform(n),
            None => Self::default(),
        }
    }
}

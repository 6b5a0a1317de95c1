use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An exact division left a remainder. Always an arithmetic bug.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("coefficient t^{requested} requested from a series truncated at order {order}")]
    BeyondTruncation { requested: usize, order: usize },

    #[error("{what}: n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two independent computations of the same quantity disagree.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("invalid arrangement: {0}")]
    Arrangement(String),

    #[error("blow-up order is not inclusion-compatible: {0}")]
    IncompatibleOrder(String),

    #[error("malformed JSON document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cap(what: &'static str, n: usize, cap: usize) -> Self {
        Error::CapExceeded { what, n, cap }
    }
}

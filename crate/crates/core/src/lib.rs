//! Exact computation of Chow-motive decompositions of wonderful
//! compactifications, with the Fulton-MacPherson configuration spaces `X[n]`
//! and their symmetric quotients `X[n]/S_n` as the main worked case.
//!
//! Every table is produced by at least two independent routes (generating
//! functions against direct enumeration, closed form against iterated
//! blow-ups) and a disagreement is reported as [`Error::CrossCheck`].

pub mod algebra;
pub mod bigjson;
mod error;
pub mod fm;
pub mod limits;
pub mod macdonald;
pub mod nests;
pub mod quotient;
pub mod wonderful;

pub use error::{Error, Result};

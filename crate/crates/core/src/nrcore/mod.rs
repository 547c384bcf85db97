//! Alternating multilinear maps on `g ⊕ V` and the Nijenhuis–Richardson
//! bracket, with its bidegree decomposition.

mod algebra;
mod bigraded;
mod bracket;
mod cochain;
pub mod coder;

pub use algebra::{in_lie_rep_part, project_h, NrAlgebra};
pub use bigraded::{BigradedMap, Target};
pub use bracket::{compose, courant_bracket, nr_bracket, nr_bracket_unchecked};
pub use cochain::{Cochain, Split};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NrError {
    #[error("cochains live on different spaces: {0:?} vs {1:?}")]
    SplitMismatch(Split, Split),
    #[error("expected bidegree {expected}, found {found}")]
    BidegreeViolation { expected: String, found: String },
}

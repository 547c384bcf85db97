//! Homotopy versions: L∞-algebras on graded spaces, their representations,
//! homotopy relative Rota–Baxter operators and pre-Lie∞-algebras.

pub mod dict;
pub mod examples;
pub mod linf;
pub mod map;
pub mod prelie;
pub mod rbo;
pub mod space;

#[cfg(test)]
mod tests;

pub use linf::{semidirect, semidirect_bracket, verify_linfty, verify_linfty_rep, LinftyAlgebra, LinftyRep};
pub use map::{graded_mn_bracket, graded_nr_bracket, phi, Arg, Flavor, GradedMap, NrGraded};
pub use prelie::{invertible_correspondence, strict_rbo_to_prelie, PreLieInf};
pub use rbo::{twist_by_t, verify_homotopy_rbo, HomotopyRbo, HrboReport, VData};
pub use space::{GradedSpace, GradedVec};

use crate::structures::StructureError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("expected {expected} labels, got {got}")]
    Labels { expected: usize, got: usize },
    #[error("{op} does not accept maps of flavor {found:?}")]
    FlavorMismatch { op: &'static str, found: Flavor },
    #[error("maps live on different graded spaces")]
    SpaceMismatch,
    #[error("expected degree {expected}, got {got}")]
    Degree { expected: i32, got: i32 },
    #[error("degree bookkeeping fails on inputs {inputs:?} with output {output}")]
    DegreeBookkeeping { inputs: Vec<usize>, output: usize },
    #[error("unsupported coefficient: {0}")]
    Support(String),
    #[error("derived bracket leaves the abelian subalgebra: {0}")]
    NotInH(String),
    #[error("p_max = {requested} exceeds the certified bound {bound}")]
    PMaxTooLarge { requested: usize, bound: usize },
    #[error("bracket closure fails for generator {generator}")]
    Closure { generator: String },
    #[error("operator is not strict")]
    NotStrict,
    #[error("operator is not invertible")]
    NotInvertible,
    #[error("{0} does not hold")]
    Unverified(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

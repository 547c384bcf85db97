//! Controlling complexes of Lie algebras, representations and (relative)
//! Rota–Baxter operators, their cohomology, the long exact sequences linking
//! them, and the twisted L∞-algebra whose `l_1` is the coboundary.

pub mod complex;
pub mod complexes;
pub mod differentials;
pub mod les;
pub mod twisted;

#[cfg(test)]
mod tests;

pub use complex::{cohomology, differential_matrix, Block, CohomologyReport, Complex};
pub use complexes::{build_complex, ComplexKind, Structure};
pub use les::{les_relative, les_rota_baxter, LesReport};
pub use twisted::{strict_extension_check, TwistedLinfty};

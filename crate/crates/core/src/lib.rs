//! Exact computations for Lie algebras with representations and relative
//! Rota–Baxter operators: Nijenhuis–Richardson brackets, controlling
//! cohomologies, infinitesimal deformations, triangular Lie bialgebras and
//! homotopy (L∞) analogues.

pub mod foundation;
pub mod nrcore;
pub mod linfty;
pub mod structures;
pub mod cohomology;
pub mod registry;
pub mod deformation;
pub mod bialgebra;
pub mod homotopy;

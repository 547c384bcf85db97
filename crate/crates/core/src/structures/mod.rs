//! Lie algebras, representations and (relative) Rota–Baxter operators, with
//! verification by direct identities and by Maurer–Cartan conditions.

pub mod direct;
mod lie;
mod mc;
mod morphism;
mod prelie;
mod rbo;
mod rep;

pub use lie::LieAlgebra;
pub use mc::{mc_algebra, mc_check, McReport};
pub use morphism::{verify_morphism, Morphism};
pub use prelie::{prelie_from_rbo, PreLie};
pub use rbo::{Rbo, RelativeRbo};
pub use rep::Representation;

use crate::foundation::Scalar;

/// Outcome of a structural check, with a failing input when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub ok: bool,
    pub witness: Option<Witness>,
    /// Whether the independent evaluation routes reached the same verdict.
    pub routes_agree: bool,
}

impl CheckReport {
    pub fn pass(check: &str) -> Self {
        CheckReport { check: check.to_string(), ok: true, witness: None, routes_agree: true }
    }

    pub(crate) fn from_routes(check: &str, direct: Option<Witness>, nr_ok: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            ok: direct.is_none() && nr_ok,
            routes_agree: direct.is_none() == nr_ok,
            witness: direct,
        }
    }
}

/// Basis inputs (by label) on which an identity fails, and the defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub defect: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("bracket table is not antisymmetric at [{0},{1}]")]
    NotAntisymmetric(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{check} failed on {inputs:?}")]
    NotVerified { check: String, inputs: Vec<String> },
    #[error("structure has not been verified")]
    Unverified,
}

impl StructureError {
    pub(crate) fn from_report(r: &CheckReport) -> Self {
        StructureError::NotVerified {
            check: r.check.clone(),
            inputs: r.witness.as_ref().map(|w| w.inputs.clone()).unwrap_or_default(),
        }
    }
}

//! Triangular Lie bialgebras: polyvectors, the Schouten–Nijenhuis bracket,
//! r-matrices, and the cochain complex of `(g, r)` obtained from the relative
//! complex of `(g, ad*, r♯)`.

pub mod complex;
pub mod deform;
pub mod duality;
pub mod polyvector;

#[cfg(test)]
mod tests;

pub use complex::{les_triangular, RMatrixComplex, TlbComplex};
pub use deform::{tlb_deform, tlb_equivalent, tlb_verify_equivalence, TlbDeformReport, TlbDeformation};
pub use duality::{f_star, flat, iota, psi, r_sharp, theta_closed, theta_of_endomorphism, FlatError};
pub use polyvector::{sn_bracket, Polyvector, PolyvectorError, Term};

use crate::cohomology::differentials::{big_d, d_ce_explicit, h_t};
use crate::nrcore::Cochain;
use crate::structures::{LieAlgebra, RelativeRbo, Representation, StructureError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CybeReport {
    /// `[r,r]_SN = 0`.
    pub ok: bool,
    pub bracket: Polyvector,
    /// Verdict of the operator identity for `r♯: g* → g` over `ad*`.
    pub operator_ok: bool,
    pub routes_agree: bool,
}

/// Classical Yang–Baxter equation through the SN bracket and, independently,
/// as the operator identity for `r♯` over the coadjoint representation.
pub fn cybe_check(lie: &LieAlgebra, r: &Polyvector) -> Result<CybeReport, TlbError> {
    check_shape(lie, r)?;
    let bracket = sn_bracket(lie, r, r)?;
    let ok = bracket.is_zero();
    let op = RelativeRbo::raw(Representation::coadjoint(lie.clone()), r_sharp(r))?;
    let operator_ok = op.verify().ok;
    Ok(CybeReport { ok, bracket, operator_ok, routes_agree: ok == operator_ok })
}

fn check_shape(lie: &LieAlgebra, r: &Polyvector) -> Result<(), TlbError> {
    if r.dim() != lie.dim() || r.degree() != 2 {
        return Err(TlbError::Shape(format!(
            "r must be a bivector on a {}-dimensional algebra, got degree {} in dimension {}",
            lie.dim(),
            r.degree(),
            r.dim()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TlbError {
    #[error("r does not satisfy the classical Yang-Baxter equation")]
    NotRMatrix,
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Polyvector(#[from] PolyvectorError),
    #[error(transparent)]
    Flat(#[from] FlatError),
}

/// `(g, r)` with `r` a skew-symmetric r-matrix, together with the relative
/// operator `r♯` over `(g, ad*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularBialgebra {
    lie: LieAlgebra,
    r: Polyvector,
    op: RelativeRbo,
}

impl TriangularBialgebra {
    pub fn new(lie: LieAlgebra, r: Polyvector) -> Result<Self, TlbError> {
        let lie = if lie.is_verified() { lie } else { lie.verified()? };
        if !cybe_check(&lie, &r)?.ok {
            return Err(TlbError::NotRMatrix);
        }
        let op = RelativeRbo::new(Representation::coadjoint(lie.clone()), r_sharp(&r))?;
        Ok(TriangularBialgebra { lie, r, op })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn r(&self) -> &Polyvector {
        &self.r
    }

    /// `(g, ad*, r♯)`.
    pub fn relative(&self) -> &RelativeRbo {
        &self.op
    }

    /// `δ_r(x) = [x, r]_SN`.
    pub fn cobracket(&self, x: &[crate::foundation::Scalar]) -> Polyvector {
        sn_bracket(&self.lie, &Polyvector::from_vector(x), &self.r).expect("shapes match")
    }

    /// `d_r χ = [r, χ]_SN`.
    pub fn d_r(&self, chi: &Polyvector) -> Polyvector {
        sn_bracket(&self.lie, &self.r, chi).expect("shapes match")
    }

    pub fn theta(&self, f: &Cochain) -> Polyvector {
        theta_closed(&self.r, f)
    }

    /// `Θf = Ψ⁻¹ h_{r♯}(f, f⋆)`.
    pub fn theta_via_relative(&self, f: &Cochain) -> Result<Polyvector, FlatError> {
        let (big, _) = iota(f, None);
        flat(&h_t(&self.op, &big))
    }

    /// `𝒟_TLB(f, χ) = (d_CE f, Θf + d_r χ)`; `chi` is absent in degree 1.
    pub fn d_tlb(&self, f: &Cochain, chi: Option<&Polyvector>) -> (Cochain, Polyvector) {
        let mut second = self.theta(f);
        if let Some(c) = chi {
            second = second.add(&self.d_r(c));
        }
        (d_ce_explicit(&self.lie, f), second)
    }

    /// `𝔭 ∘ 𝒟 ∘ 𝔦` through the relative complex of `(g, ad*, r♯)`. Also
    /// reports whether the `g*`-part of the image is `(d_CE f)⋆`, i.e. whether
    /// the image stayed inside the image of `𝔦`.
    pub fn d_tlb_via_relative(
        &self,
        f: &Cochain,
        chi: Option<&Polyvector>,
    ) -> Result<((Cochain, Polyvector), bool), FlatError> {
        let (big_f, big_theta) = iota(f, chi);
        let (df, dt) = big_d(&self.op, &big_f, big_theta.as_ref());
        let small = duality::restrict_g(&df);
        let in_image = df == iota(&small, None).0;
        Ok(((small, flat(&dt)?), in_image))
    }
}

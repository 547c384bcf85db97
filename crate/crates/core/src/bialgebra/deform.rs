//! Infinitesimal deformations `(μ + tω₁, r + t𝒳₁)` of a triangular Lie
//! bialgebra.

use super::complex::TlbComplex;
use super::polyvector::{sn_bracket_tables, Polyvector};
use super::TriangularBialgebra;
use crate::cohomology::complex::differential_matrix;
use crate::deformation::dual::Dual;
use crate::foundation::{exterior_basis, Matrix, Scalar, Strategy};
use crate::nrcore::{Cochain, Split};
use crate::structures::direct::{Ring, Tables};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlbDeformation {
    /// `Hom(∧²g, g)` on the pure split of `g`.
    pub omega1: Cochain,
    pub chi1: Polyvector,
}

impl TlbDeformation {
    pub fn zero(tlb: &TriangularBialgebra) -> Self {
        let d = tlb.lie().dim();
        TlbDeformation { omega1: Cochain::zero(Split::pure(d), 2), chi1: Polyvector::zero(d, 2) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        TlbDeformation { omega1: self.omega1.sub(&o.omega1), chi1: self.chi1.sub(&o.chi1) }
    }

    fn coords(&self, c: &TlbComplex) -> Vec<Scalar> {
        c.join_coords(2, &self.omega1, &self.chi1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlbDeformReport {
    /// `𝒟_TLB(ω₁, 𝒳₁) = 0`.
    pub cocycle: bool,
    /// `μ + tω₁` satisfies Jacobi modulo `t²`.
    pub jacobi: bool,
    /// `[r + t𝒳₁, r + t𝒳₁]_SN = 0` for the deformed bracket, modulo `t²`.
    pub cybe: bool,
    /// First-order coefficient of the deformed `[r,r]_SN`.
    pub cybe_first_order: Polyvector,
    pub defect: (Cochain, Polyvector),
}

impl TlbDeformReport {
    pub fn agree(&self) -> bool {
        self.cocycle == (self.jacobi && self.cybe)
    }
}

fn dual_lie_tables(tlb: &TriangularBialgebra, omega1: &Cochain) -> Tables<Dual> {
    let base = tlb.lie().tables();
    let d = base.dg;
    let mut mu = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let w = omega1.eval_basis(&[i, j]);
            for (k, x) in w.into_iter().enumerate() {
                mu.push(Dual::new(base.mu_at(i, j, k).clone(), x));
            }
        }
    }
    Tables { dg: d, dv: 0, mu, rho: vec![], t: vec![] }
}

/// Cocycle test against the first-order expansion of Jacobi and the CYBE with
/// dual numbers.
pub fn tlb_deform(tlb: &TriangularBialgebra, d: &TlbDeformation) -> TlbDeformReport {
    let defect = tlb.d_tlb(&d.omega1, Some(&d.chi1));
    let cocycle = defect.0.is_zero() && defect.1.is_zero();
    let tb = dual_lie_tables(tlb, &d.omega1);
    let jacobi = tb.first_jacobi_failure().is_none();
    let r: Vec<Dual> =
        tlb.r().coeffs().iter().zip(d.chi1.coeffs()).map(|(a, b)| Dual::new(a.clone(), b.clone())).collect();
    let rr = sn_bracket_tables(&tb, &r, 2, &r, 2);
    let cybe = rr.iter().all(Ring::is_zero);
    let dim = tlb.lie().dim();
    let cybe_first_order = Polyvector::from_coeffs(dim, 3, rr.into_iter().map(|x| x.b).collect());
    TlbDeformReport { cocycle, jacobi, cybe, cybe_first_order, defect }
}

/// Solves `𝒟_TLB(N) = d₂ − d₁`. A solution makes `id + tN` an isomorphism
/// from the `d₂`-deformation onto the `d₁`-deformation.
pub fn tlb_equivalent(tlb: &TriangularBialgebra, d1: &TlbDeformation, d2: &TlbDeformation) -> Option<Matrix> {
    let c = TlbComplex { tlb: tlb.clone() };
    let m = differential_matrix(&c, 1, Strategy::default());
    let x = m.solve(&d2.sub(d1).coords(&c))?;
    let (f, _) = c.split_coords(1, &x)?;
    let dim = tlb.lie().dim();
    let mut n = Matrix::zeros(dim, dim);
    for (idx, o, v) in f.nonzero() {
        n.set(o, idx[0], v);
    }
    Some(n)
}

fn phi(n: &Matrix, x: &[Dual]) -> Vec<Dual> {
    let a: Vec<Scalar> = x.iter().map(|d| d.a.clone()).collect();
    x.iter().zip(n.mul_vec(&a)).map(|(d, y)| Dual::new(d.a.clone(), &d.b + y)).collect()
}

/// Substitutes `φ = id + tN`: `φ[x,y]₂ = [φx,φy]₁` on basis vectors and
/// `(φ⊗φ)(r + t𝒳₂) = r + t𝒳₁`.
pub fn tlb_verify_equivalence(
    tlb: &TriangularBialgebra,
    d1: &TlbDeformation,
    d2: &TlbDeformation,
    n: &Matrix,
) -> bool {
    let (src, dst) = (dual_lie_tables(tlb, &d2.omega1), dual_lie_tables(tlb, &d1.omega1));
    let dim = src.dg;
    let unit = |i: usize| {
        let mut v = vec![Dual::default(); dim];
        v[i] = Dual::from_scalar(&Scalar::from_integer(1.into()));
        v
    };
    for i in 0..dim {
        for j in 0..dim {
            let (x, y) = (unit(i), unit(j));
            if phi(n, &src.bracket(&x, &y)) != dst.bracket(&phi(n, &x), &phi(n, &y)) {
                return false;
            }
        }
    }
    // (φ⊗φ)(r + t𝒳₂), expanded term by term.
    let mut image_b = d2.chi1.clone();
    for (j, c) in exterior_basis(2, dim).into_iter().zip(tlb.r().coeffs()) {
        let (ea, eb) = (Polyvector::basis(dim, &[j[0]]), Polyvector::basis(dim, &[j[1]]));
        let (na, nb) = (Polyvector::from_vector(&n.column(j[0])), Polyvector::from_vector(&n.column(j[1])));
        image_b = image_b.add(&na.wedge(&eb).add(&ea.wedge(&nb)).scale(c));
    }
    image_b == d1.chi1
}

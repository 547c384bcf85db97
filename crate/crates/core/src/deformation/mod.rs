//! Infinitesimal deformations over `K[t]/(t²)` of relative Rota–Baxter Lie
//! algebras: first-order axioms with dual numbers, the 2-cocycle test,
//! equivalences and classification by second cohomology.

pub mod dual;

use crate::cohomology::complex::{class_coordinates, degree_data, differential_matrix, Complex};
use crate::cohomology::complexes::RelativeComplex;
use crate::cohomology::differentials::big_d;
use crate::foundation::{Matrix, Scalar, Strategy};
use crate::nrcore::Cochain;
use crate::structures::direct::Tables;
use crate::structures::RelativeRbo;
use dual::{dual_tables, Dual};
use num_traits::{One, Zero};

/// `(ω₁, ϱ₁, 𝒯₁)`: the deformed structure is `(μ + tω₁, ρ + tϱ₁, T + t𝒯₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalDeformation {
    /// `Hom(∧²g, g)` on the pure split of `g`.
    pub omega1: Cochain,
    /// `ϱ₁(e_i)` as `dim V × dim V` matrices.
    pub varrho1: Vec<Matrix>,
    /// `𝒯₁: V → g`, `dim g × dim V`.
    pub t1: Matrix,
}

/// `φ = id + tN`, `ψ = id + tS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub n: Matrix,
    pub s: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub jacobi: bool,
    pub representation: bool,
    pub operator: bool,
    /// First failing identity with its basis inputs.
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.jacobi && self.representation && self.operator
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub ok: bool,
    /// `𝒟(ω₁ + ϱ₁, 𝒯₁)`.
    pub defect: (Cochain, Cochain),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformationError {
    #[error("input {0} is not a 2-cocycle")]
    NotCocycle(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

impl InfinitesimalDeformation {
    pub fn zero(base: &RelativeRbo) -> Self {
        let (dg, dv) = (base.lie().dim(), base.rep().dim_v());
        InfinitesimalDeformation {
            omega1: Cochain::zero(crate::nrcore::Split::pure(dg), 2),
            varrho1: vec![Matrix::zeros(dv, dv); dg],
            t1: Matrix::zeros(dg, dv),
        }
    }

    /// `(ω₁ + ϱ₁, 𝒯₁)` as a 2-cochain of the relative complex.
    pub fn to_cochains(&self, base: &RelativeRbo) -> (Cochain, Cochain) {
        let s = base.rep().split();
        let mut f = self.omega1.reindex(s, |i| i);
        for (i, m) in self.varrho1.iter().enumerate() {
            for (&(b, a), x) in m.entries() {
                f.add_at(&[i, s.v(a)], s.v(b), x);
            }
        }
        let mut th = Cochain::zero(s, 1);
        for (&(i, a), x) in self.t1.entries() {
            th.set(&[s.v(a)], i, x.clone());
        }
        (f, th)
    }

    pub fn from_cochains(base: &RelativeRbo, f: &Cochain, theta: &Cochain) -> Self {
        let s = base.rep().split();
        let (dg, dv) = (s.dim_g, s.dim_v);
        let omega1 = Cochain::from_fn(crate::nrcore::Split::pure(dg), 2, |idx, o| f.get(idx, o));
        let varrho1 = (0..dg)
            .map(|i| {
                let mut m = Matrix::zeros(dv, dv);
                for a in 0..dv {
                    for b in 0..dv {
                        m.set(b, a, f.get(&[i, s.v(a)], s.v(b)));
                    }
                }
                m
            })
            .collect();
        let mut t1 = Matrix::zeros(dg, dv);
        for i in 0..dg {
            for a in 0..dv {
                t1.set(i, a, theta.get(&[s.v(a)], i));
            }
        }
        InfinitesimalDeformation { omega1, varrho1, t1 }
    }

    /// Coordinates in the degree-2 layout of the relative complex.
    pub fn coords(&self, base: &RelativeRbo) -> Vec<Scalar> {
        let c = RelativeComplex { op: base.clone() };
        let (f, th) = self.to_cochains(base);
        let blocks = c.blocks(2);
        let mut v = blocks[0].coords(&f);
        v.extend(blocks[1].coords(&th));
        v
    }

    pub fn from_coords(base: &RelativeRbo, x: &[Scalar]) -> Self {
        let c = RelativeComplex { op: base.clone() };
        let blocks = c.blocks(2);
        let k = blocks[0].len();
        Self::from_cochains(base, &blocks[0].to_cochain(&x[..k]), &blocks[1].to_cochain(&x[k..]))
    }

    pub fn add(&self, o: &Self) -> Self {
        InfinitesimalDeformation {
            omega1: self.omega1.add(&o.omega1),
            varrho1: self.varrho1.iter().zip(&o.varrho1).map(|(a, b)| a.add(b)).collect(),
            t1: self.t1.add(&o.t1),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let minus = -Scalar::one();
        self.add(&InfinitesimalDeformation {
            omega1: o.omega1.scale(&minus),
            varrho1: o.varrho1.iter().map(|m| m.scale(&minus)).collect(),
            t1: o.t1.scale(&minus),
        })
    }

    fn first_order_tables(&self, base: &RelativeRbo) -> Tables<Scalar> {
        let (dg, dv) = (base.lie().dim(), base.rep().dim_v());
        let mut mu = vec![Scalar::zero(); dg * dg * dg];
        for i in 0..dg {
            for j in 0..dg {
                let v = self.omega1.eval_basis(&[i, j]);
                for (k, x) in v.into_iter().enumerate() {
                    mu[(i * dg + j) * dg + k] = x;
                }
            }
        }
        let mut rho = vec![Scalar::zero(); dg * dv * dv];
        for (i, m) in self.varrho1.iter().enumerate() {
            for (&(b, a), x) in m.entries() {
                rho[(i * dv + b) * dv + a] = x.clone();
            }
        }
        let mut t = vec![Scalar::zero(); dg * dv];
        for (&(i, a), x) in self.t1.entries() {
            t[i * dv + a] = x.clone();
        }
        Tables { dg, dv, mu, rho, t }
    }

    /// Structure constants of `(μ + tω₁, ρ + tϱ₁, T + t𝒯₁)`.
    pub fn deformed_tables(&self, base: &RelativeRbo) -> Tables<Dual> {
        dual_tables(&base.tables(), &self.first_order_tables(base))
    }
}

/// The three first-order conditions, by expanding the defining identities
/// over dual numbers.
pub fn deformation_axioms(base: &RelativeRbo, d: &InfinitesimalDeformation) -> AxiomReport {
    let tb = d.deformed_tables(base);
    let jac = tb.first_jacobi_failure();
    let rep = tb.first_rep_failure();
    let rbo = tb.first_rbo_failure();
    let witness = if let Some((idx, _)) = &jac {
        Some(format!("jacobi at {idx:?}"))
    } else if let Some((i, j, a, _)) = &rep {
        Some(format!("representation at (e{}, e{}, v{})", i + 1, j + 1, a + 1))
    } else {
        rbo.as_ref().map(|(a, b, _)| format!("operator at (v{}, v{})", a + 1, b + 1))
    };
    AxiomReport { jacobi: jac.is_none(), representation: rep.is_none(), operator: rbo.is_none(), witness }
}

/// `𝒟(ω₁ + ϱ₁, 𝒯₁) = 0`.
pub fn is_two_cocycle(base: &RelativeRbo, d: &InfinitesimalDeformation) -> CocycleReport {
    let (f, th) = d.to_cochains(base);
    let defect = big_d(base, &f, Some(&th));
    CocycleReport { ok: defect.0.is_zero() && defect.1.is_zero(), defect }
}

/// `𝒟(N, S)` as a deformation.
pub fn coboundary(base: &RelativeRbo, e: &Equivalence) -> InfinitesimalDeformation {
    let s = base.rep().split();
    let mut f = Cochain::zero(s, 1);
    for (&(i, j), x) in e.n.entries() {
        f.set(&[j], i, x.clone());
    }
    for (&(b, a), x) in e.s.entries() {
        f.set(&[s.v(a)], s.v(b), x.clone());
    }
    let (df, dt) = big_d(base, &f, None);
    InfinitesimalDeformation::from_cochains(base, &df, &dt)
}

/// Solves `𝒟(N, S) = d₂ − d₁`. A solution makes `(id + tN, id + tS)` an
/// isomorphism from the `d₂`-deformation onto the `d₁`-deformation.
pub fn equivalent(
    base: &RelativeRbo,
    d1: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
) -> Option<Equivalence> {
    let c = RelativeComplex { op: base.clone() };
    let m = differential_matrix(&c, 1, Strategy::default());
    let x = m.solve(&d2.sub(d1).coords(base))?;
    let b = c.blocks(1).remove(0).to_cochain(&x);
    let s = base.rep().split();
    let (dg, dv) = (s.dim_g, s.dim_v);
    let mut n = Matrix::zeros(dg, dg);
    let mut sm = Matrix::zeros(dv, dv);
    for (idx, o, v) in b.nonzero() {
        if s.is_g(o) {
            n.set(o, idx[0], v);
        } else {
            sm.set(o - dg, idx[0] - dg, v);
        }
    }
    Some(Equivalence { n, s: sm })
}

fn dual_matrix_apply(m: &Matrix, x: &[Dual]) -> Vec<Dual> {
    // (id + t m) x
    let b: Vec<Scalar> = x.iter().map(|d| d.a.clone()).collect();
    let mb = m.mul_vec(&b);
    x.iter().zip(mb).map(|(d, y)| Dual::new(d.a.clone(), &d.b + y)).collect()
}

fn unit_dual(n: usize, i: usize) -> Vec<Dual> {
    let mut v = vec![Dual::default(); n];
    v[i] = Dual::new(Scalar::one(), Scalar::zero());
    v
}

/// Checks by substitution that `(id + tN, id + tS)` maps the `d₂`-structure
/// onto the `d₁`-structure modulo `t²`.
pub fn verify_equivalence(
    base: &RelativeRbo,
    d1: &InfinitesimalDeformation,
    d2: &InfinitesimalDeformation,
    e: &Equivalence,
) -> bool {
    let src = d2.deformed_tables(base);
    let dst = d1.deformed_tables(base);
    let (dg, dv) = (src.dg, src.dv);
    let phi = |x: &[Dual]| dual_matrix_apply(&e.n, x);
    let psi = |v: &[Dual]| dual_matrix_apply(&e.s, v);
    for i in 0..dg {
        for j in 0..dg {
            let (x, y) = (unit_dual(dg, i), unit_dual(dg, j));
            if phi(&src.bracket(&x, &y)) != dst.bracket(&phi(&x), &phi(&y)) {
                return false;
            }
        }
        for a in 0..dv {
            let (x, u) = (unit_dual(dg, i), unit_dual(dv, a));
            if psi(&src.act(&x, &u)) != dst.act(&phi(&x), &psi(&u)) {
                return false;
            }
        }
    }
    (0..dv).all(|a| {
        let u = unit_dual(dv, a);
        phi(&src.apply_t(&u)) == dst.apply_t(&psi(&u))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Class index of each input, numbered by first occurrence.
    pub class_of: Vec<usize>,
    pub classes: usize,
    /// Coordinates of each class in the `H²` basis of the cohomology engine.
    pub class_coordinates: Vec<Vec<Scalar>>,
    pub betti2: usize,
}

/// Groups 2-cocycles by their class in `H²(g, ρ, T)`.
pub fn classify(
    base: &RelativeRbo,
    ds: &[InfinitesimalDeformation],
) -> Result<Classification, DeformationError> {
    let c = RelativeComplex { op: base.clone() };
    let data = degree_data(&c, 2, Strategy::default());
    let dim = c.dim(2);
    let mut seen: Vec<Vec<Scalar>> = Vec::new();
    let mut class_of = Vec::with_capacity(ds.len());
    for (i, d) in ds.iter().enumerate() {
        if !is_two_cocycle(base, d).ok {
            return Err(DeformationError::NotCocycle(i));
        }
        let coords = class_coordinates(&data, dim, &d.coords(base)).ok_or(DeformationError::NotCocycle(i))?;
        let k = match seen.iter().position(|s| *s == coords) {
            Some(k) => k,
            None => {
                seen.push(coords);
                seen.len() - 1
            }
        };
        class_of.push(k);
    }
    Ok(Classification {
        class_of,
        classes: seen.len(),
        class_coordinates: seen,
        betti2: data.representatives.len(),
    })
}

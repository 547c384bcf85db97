//! The complexes `(⊕ C^n_TLB, 𝒟_TLB)` and `(⊕_{n≥2} ∧^n g, d_r)`, and the
//! long exact sequence joining them with Chevalley–Eilenberg cohomology.

use super::polyvector::Polyvector;
use super::TriangularBialgebra;
use crate::cohomology::complex::{Block, Complex};
use crate::cohomology::complexes::LieComplex;
use crate::cohomology::les::{LesReport, ShortExact};
use crate::foundation::{exterior_basis, Scalar, Strategy};
use crate::nrcore::Split;

fn wedge_labels(names: &[String], n: usize) -> Vec<String> {
    exterior_basis(n, names.len())
        .into_iter()
        .map(|j| j.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("^"))
        .collect()
}

/// `C^1 = Hom(g, g)`, `C^n = Hom(∧^n g, g) ⊕ ∧^n g` for `n ≥ 2`.
pub struct TlbComplex {
    pub tlb: TriangularBialgebra,
}

impl TlbComplex {
    fn d(&self) -> usize {
        self.tlb.lie().dim()
    }

    pub fn f_block(&self, n: usize) -> Option<Block> {
        (n >= 1).then(|| Block::full(Split::pure(self.d()), n))
    }

    pub fn chi_len(&self, n: usize) -> usize {
        if n >= 2 {
            exterior_basis(n, self.d()).len()
        } else {
            0
        }
    }

    pub fn split_coords(&self, n: usize, x: &[Scalar]) -> Option<(crate::nrcore::Cochain, Option<Polyvector>)> {
        let b = self.f_block(n)?;
        let f = b.to_cochain(&x[..b.len()]);
        let chi = (n >= 2).then(|| Polyvector::from_coeffs(self.d(), n, x[b.len()..].to_vec()));
        Some((f, chi))
    }

    pub fn join_coords(&self, n: usize, f: &crate::nrcore::Cochain, chi: &Polyvector) -> Vec<Scalar> {
        let Some(b) = self.f_block(n) else { return vec![] };
        let mut out = b.coords(f);
        if n >= 2 {
            out.extend_from_slice(chi.coeffs());
        }
        out
    }
}

impl Complex for TlbComplex {
    fn name(&self) -> String {
        "triangular".into()
    }
    fn dim(&self, n: usize) -> usize {
        self.f_block(n).map_or(0, |b| b.len()) + self.chi_len(n)
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        let Some((f, chi)) = self.split_coords(n, x) else {
            return vec![Scalar::default(); self.dim(n + 1)];
        };
        let (df, dchi) = self.tlb.d_tlb(&f, chi.as_ref());
        self.join_coords(n + 1, &df, &dchi)
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        let names = self.tlb.lie().labels();
        let mut out: Vec<String> =
            self.f_block(n).map(|b| b.labels(names).into_iter().map(|l| format!("f{l}")).collect()).unwrap_or_default();
        if n >= 2 {
            out.extend(wedge_labels(names, n).into_iter().map(|l| format!("chi({l})")));
        }
        out
    }
}

/// `(∧^n g, d_r)` for `n ≥ 2`, zero below.
pub struct RMatrixComplex {
    pub tlb: TriangularBialgebra,
}

impl Complex for RMatrixComplex {
    fn name(&self) -> String {
        "r-matrix".into()
    }
    fn dim(&self, n: usize) -> usize {
        if n >= 2 {
            exterior_basis(n, self.tlb.lie().dim()).len()
        } else {
            0
        }
    }
    fn apply(&self, n: usize, x: &[Scalar]) -> Vec<Scalar> {
        if n < 2 {
            return vec![Scalar::default(); self.dim(n + 1)];
        }
        let chi = Polyvector::from_coeffs(self.tlb.lie().dim(), n, x.to_vec());
        self.tlb.d_r(&chi).coeffs().to_vec()
    }
    fn slot_labels(&self, n: usize) -> Vec<String> {
        if n < 2 {
            return vec![];
        }
        wedge_labels(self.tlb.lie().labels(), n)
    }
}

/// `0 → (∧g, d_r) → (C_TLB, 𝒟_TLB) → (C_Lie, d_CE) → 0` with
/// `c^n[α] = [Θα]`; the Lie column uses `C^0 = 0`.
pub fn les_triangular(tlb: &TriangularBialgebra, max_degree: usize, strategy: Strategy) -> LesReport {
    let sub = RMatrixComplex { tlb: tlb.clone() };
    let total = TlbComplex { tlb: tlb.clone() };
    let quot = LieComplex { lie: tlb.lie().clone(), reduced: true };
    let f_len = |n: usize| quot.dim(n);
    let ses = ShortExact {
        sub: &sub,
        total: &total,
        quot: &quot,
        incl: Box::new(|n, chi| {
            let mut v = vec![Scalar::default(); f_len(n)];
            v.extend_from_slice(chi);
            v
        }),
        proj: Box::new(|n, x| x[..f_len(n)].to_vec()),
        section: Box::new(|n, f| {
            let mut v = f.to_vec();
            v.resize(v.len() + sub.dim(n), Scalar::default());
            v
        }),
        connecting: Box::new(|n, f| {
            let Some(b) = total.f_block(n) else { return vec![] };
            let th = tlb.theta(&b.to_cochain(f));
            if sub.dim(n + 1) == 0 {
                vec![]
            } else {
                th.coeffs().to_vec()
            }
        }),
    };
    ses.check(max_degree, strategy)
}

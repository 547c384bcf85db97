use super::direct::Tables;
use super::{CheckReport, LieAlgebra, StructureError, Witness};
use crate::foundation::{Matrix, Scalar};
use crate::nrcore::{nr_bracket_unchecked, Cochain, Split};
use num_traits::Zero;

/// Representation `ρ: g → gl(V)`; `rho[i]` is the matrix of `ρ(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    lie: LieAlgebra,
    dim_v: usize,
    labels_v: Vec<String>,
    rho: Vec<Matrix>,
    verified: bool,
}

impl Representation {
    pub fn new(lie: LieAlgebra, dim_v: usize, rho: Vec<Matrix>) -> Result<Self, StructureError> {
        if rho.len() != lie.dim() || rho.iter().any(|m| m.rows() != dim_v || m.cols() != dim_v) {
            return Err(StructureError::Dimension("representation matrices".into()));
        }
        let labels_v = (1..=dim_v).map(|i| format!("v{i}")).collect();
        Ok(Representation { lie, dim_v, labels_v, rho, verified: false })
    }

    pub fn adjoint(lie: LieAlgebra) -> Self {
        let n = lie.dim();
        let rho = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                for a in 0..n {
                    for (b, x) in lie.mu().eval_basis(&[i, a]).into_iter().enumerate() {
                        m.set(b, a, x);
                    }
                }
                m
            })
            .collect();
        let verified = lie.is_verified();
        let labels_v = lie.labels().to_vec();
        Representation { lie, dim_v: n, labels_v, rho, verified }
    }

    /// `ad*(x) = −(ad x)ᵀ` on the dual basis.
    pub fn coadjoint(lie: LieAlgebra) -> Self {
        let n = lie.dim();
        let ad = Self::adjoint(lie);
        let rho = ad.rho.iter().map(|m| m.transpose().scale(&-Scalar::from_integer(1.into()))).collect();
        let labels_v = ad.lie.labels().iter().map(|l| format!("{l}*")).collect();
        Representation { lie: ad.lie, dim_v: n, labels_v, rho, verified: ad.verified }
    }

    pub fn trivial(lie: LieAlgebra, dim_v: usize) -> Self {
        let rho = vec![Matrix::zeros(dim_v, dim_v); lie.dim()];
        let verified = lie.is_verified();
        let labels_v = (1..=dim_v).map(|i| format!("v{i}")).collect();
        Representation { lie, dim_v, labels_v, rho, verified }
    }

    pub fn with_labels(mut self, labels_v: Vec<String>) -> Result<Self, StructureError> {
        if labels_v.len() != self.dim_v {
            return Err(StructureError::Dimension("label count".into()));
        }
        self.labels_v = labels_v;
        Ok(self)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn labels_v(&self) -> &[String] {
        &self.labels_v
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn split(&self) -> Split {
        Split::new(self.lie.dim(), self.dim_v)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Labels of `g ⊕ V`.
    pub fn labels_w(&self) -> Vec<String> {
        self.lie.labels().iter().chain(self.labels_v.iter()).cloned().collect()
    }

    /// `π = μ + ρ ∈ C^{1|0}(g ⊕ V, g ⊕ V)`.
    pub fn pi(&self) -> Cochain {
        let s = self.split();
        let mut pi = self.lie.mu().reindex(s, |i| i);
        for (i, m) in self.rho.iter().enumerate() {
            for (&(b, a), x) in m.entries() {
                pi.add_at(&[i, s.v(a)], s.v(b), x);
            }
        }
        pi
    }

    pub fn tables(&self) -> Tables<Scalar> {
        let (dg, dv) = (self.lie.dim(), self.dim_v);
        let mut rho = vec![Scalar::zero(); dg * dv * dv];
        for (i, m) in self.rho.iter().enumerate() {
            for (&(b, a), x) in m.entries() {
                rho[(i * dv + b) * dv + a] = x.clone();
            }
        }
        Tables { dg, dv, mu: self.lie.constants(), rho, t: vec![Scalar::zero(); dg * dv] }
    }

    /// `ρ([x,y]) = [ρ(x), ρ(y)]`, checked directly and as the `V`-valued part
    /// of `[π,π]_NR`.
    pub fn verify(&self) -> CheckReport {
        let s = self.split();
        let sq = nr_bracket_unchecked(&self.pi(), &self.pi());
        let nr_ok = sq.filter(|_, o| !s.is_g(o)).is_zero();
        let labels = self.labels_w();
        let direct = self.tables().first_rep_failure().map(|(i, j, a, d)| Witness {
            inputs: vec![labels[i].clone(), labels[j].clone(), labels[s.v(a)].clone()],
            defect: d,
        });
        CheckReport::from_routes("representation", direct, nr_ok)
    }

    /// Lie and representation axioms; marks the pair as verified.
    pub fn verified(mut self) -> Result<Self, StructureError> {
        if !self.lie.is_verified() {
            self.lie = self.lie.verified()?;
        }
        let r = self.verify();
        if !r.ok {
            return Err(StructureError::from_report(&r));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn change_basis(&self, a: &Matrix, b: &Matrix) -> Option<Self> {
        let lie = self.lie.change_basis(a)?;
        let b_inv = b.inverse()?;
        let n = self.lie.dim();
        let rho = (0..n)
            .map(|j| {
                let mut m = Matrix::zeros(self.dim_v, self.dim_v);
                for (i, c) in a.column(j).iter().enumerate() {
                    if !c.is_zero() {
                        m = m.add(&self.rho[i].scale(c));
                    }
                }
                b_inv.mul(&m).mul(b)
            })
            .collect();
        Some(Representation { lie, dim_v: self.dim_v, labels_v: self.labels_v.clone(), rho, verified: self.verified })
    }
}

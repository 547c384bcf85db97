use super::direct::Tables;
use super::{CheckReport, StructureError, Witness};
use crate::foundation::Scalar;
use crate::nrcore::{nr_bracket_unchecked, Cochain, Split};
use num_traits::Zero;

/// Finite-dimensional Lie algebra given by its bracket `μ ∈ Hom(∧²g, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    mu: Cochain,
    verified: bool,
}

impl LieAlgebra {
    /// Unverified algebra from a bracket cochain on a pure split.
    pub fn from_cochain(mu: Cochain, labels: Option<Vec<String>>) -> Result<Self, StructureError> {
        let s = mu.split();
        if s.dim_v != 0 || mu.arity() != Some(2) {
            return Err(StructureError::Dimension("bracket must be a 2-cochain on g".into()));
        }
        let labels = labels.unwrap_or_else(|| (1..=s.dim_g).map(|i| format!("e{i}")).collect());
        if labels.len() != s.dim_g {
            return Err(StructureError::Dimension("label count".into()));
        }
        Ok(LieAlgebra { labels, mu, verified: false })
    }

    /// Unverified algebra from structure constants `[e_i, e_j] ∋ c e_k`.
    /// Entries for `[j,i]` are folded into `[i,j]` with a sign; contradictory
    /// or diagonal entries are rejected.
    pub fn from_constants(
        dim: usize,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, StructureError> {
        let mut mu = Cochain::zero(Split::pure(dim), 2);
        let mut seen = std::collections::BTreeMap::new();
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(StructureError::Dimension(format!("index out of range in [{i},{j}]")));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(StructureError::NotAntisymmetric(i, j));
                }
                continue;
            }
            let (a, b, val) = if i < j { (i, j, c.clone()) } else { (j, i, -c.clone()) };
            if let Some(prev) = seen.insert((a, b, k), val.clone()) {
                if prev != val {
                    return Err(StructureError::NotAntisymmetric(i, j));
                }
            }
            mu.set(&[a, b], k, val);
        }
        Self::from_cochain(mu, None)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, StructureError> {
        if labels.len() != self.dim() {
            return Err(StructureError::Dimension("label count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn abelian(dim: usize) -> Self {
        let mut l = Self::from_constants(dim, &[]).expect("abelian");
        l.verified = true;
        l
    }

    pub fn dim(&self) -> usize {
        self.mu.split().dim_g
    }

    pub fn mu(&self) -> &Cochain {
        &self.mu
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mu.eval(&[x.to_vec(), y.to_vec()])
    }

    /// `c[i][j][k]`, flattened.
    pub fn constants(&self) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                out.extend(self.mu.eval_basis(&[i, j]));
            }
        }
        out
    }

    pub fn tables(&self) -> Tables<Scalar> {
        Tables { dg: self.dim(), dv: 0, mu: self.constants(), rho: vec![], t: vec![] }
    }

    /// Jacobi identity, checked both as `[μ,μ]_NR = 0` and directly.
    pub fn verify(&self) -> CheckReport {
        let nr_ok = nr_bracket_unchecked(&self.mu, &self.mu).is_zero();
        let direct = self.tables().first_jacobi_failure().map(|(idx, d)| Witness {
            inputs: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            defect: d,
        });
        CheckReport::from_routes("jacobi", direct, nr_ok)
    }

    pub fn verified(mut self) -> Result<Self, StructureError> {
        let r = self.verify();
        if !r.ok {
            return Err(StructureError::from_report(&r));
        }
        self.verified = true;
        Ok(self)
    }

    /// Structure in a new basis whose vectors are the columns of `a`.
    pub fn change_basis(&self, a: &crate::foundation::Matrix) -> Option<Self> {
        let inv = a.inverse()?;
        Some(LieAlgebra {
            labels: self.labels.clone(),
            mu: self.mu.conjugate(a, &inv),
            verified: self.verified,
        })
    }
}

use super::direct::Tables;
use super::{CheckReport, LieAlgebra, Representation, StructureError, Witness};
use crate::foundation::{Matrix, Scalar};
use crate::nrcore::{nr_bracket_unchecked, Cochain};

/// Relative Rota–Baxter operator `T: V → g` with respect to a representation:
/// `[Tu, Tv] = T(ρ(Tu)v − ρ(Tv)u)`. `t` is `dim g × dim V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeRbo {
    rep: Representation,
    t: Matrix,
    verified: bool,
}

impl RelativeRbo {
    /// Unverified operator.
    pub fn raw(rep: Representation, t: Matrix) -> Result<Self, StructureError> {
        if t.rows() != rep.lie().dim() || t.cols() != rep.dim_v() {
            return Err(StructureError::Dimension("operator matrix".into()));
        }
        Ok(RelativeRbo { rep, t, verified: false })
    }

    /// Verifies the Lie algebra, the representation and the operator.
    pub fn new(rep: Representation, t: Matrix) -> Result<Self, StructureError> {
        let rep = if rep.is_verified() { rep } else { rep.verified()? };
        let mut op = Self::raw(rep, t)?;
        let r = op.verify();
        if !r.ok {
            return Err(StructureError::from_report(&r));
        }
        op.verified = true;
        Ok(op)
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn lie(&self) -> &LieAlgebra {
        self.rep.lie()
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn require_verified(&self) -> Result<(), StructureError> {
        if self.verified {
            Ok(())
        } else {
            Err(StructureError::Unverified)
        }
    }

    /// `T ∈ C^{−1|1}(g ⊕ V, g ⊕ V)`.
    pub fn t_cochain(&self) -> Cochain {
        let s = self.rep.split();
        let mut c = Cochain::zero(s, 1);
        for (&(i, a), x) in self.t.entries() {
            c.set(&[s.v(a)], i, x.clone());
        }
        c
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.t.mul_vec(v)
    }

    pub fn tables(&self) -> Tables<Scalar> {
        let mut tb = self.rep.tables();
        for (&(i, a), x) in self.t.entries() {
            tb.t[i * tb.dv + a] = x.clone();
        }
        tb
    }

    /// Operator identity, directly and as `[[π,T],T]_NR = 0`.
    pub fn verify(&self) -> CheckReport {
        let pi = self.rep.pi();
        let t = self.t_cochain();
        let nr_ok = nr_bracket_unchecked(&nr_bracket_unchecked(&pi, &t), &t).is_zero();
        let labels = self.rep.labels_v();
        let direct = self.tables().first_rbo_failure().map(|(a, b, d)| Witness {
            inputs: vec![labels[a].clone(), labels[b].clone()],
            defect: d,
        });
        CheckReport::from_routes("relative-rota-baxter", direct, nr_ok)
    }

    pub fn change_basis(&self, a: &Matrix, b: &Matrix) -> Option<Self> {
        let rep = self.rep.change_basis(a, b)?;
        let t = a.inverse()?.mul(&self.t).mul(b);
        Some(RelativeRbo { rep, t, verified: self.verified })
    }
}

/// Rota–Baxter operator of weight zero `T: g → g`:
/// `[Tx, Ty] = T([Tx, y] + [x, Ty])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rbo {
    lie: LieAlgebra,
    t: Matrix,
    verified: bool,
}

impl Rbo {
    pub fn raw(lie: LieAlgebra, t: Matrix) -> Result<Self, StructureError> {
        if t.rows() != lie.dim() || t.cols() != lie.dim() {
            return Err(StructureError::Dimension("operator matrix".into()));
        }
        Ok(Rbo { lie, t, verified: false })
    }

    pub fn new(lie: LieAlgebra, t: Matrix) -> Result<Self, StructureError> {
        let lie = if lie.is_verified() { lie } else { lie.verified()? };
        let mut op = Self::raw(lie, t)?;
        let r = op.verify();
        if !r.ok {
            return Err(StructureError::from_report(&r));
        }
        op.verified = true;
        Ok(op)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// The same operator viewed relative to the adjoint representation.
    pub fn as_relative(&self) -> RelativeRbo {
        RelativeRbo { rep: Representation::adjoint(self.lie.clone()), t: self.t.clone(), verified: self.verified }
    }

    /// Rota–Baxter identity directly, and through the relative encoding.
    pub fn verify(&self) -> CheckReport {
        let mut tb = self.lie.tables();
        tb.dv = tb.dg;
        tb.t = (0..tb.dg).flat_map(|i| (0..tb.dg).map(move |a| (i, a))).map(|(i, a)| self.t.get(i, a)).collect();
        let mut direct = None;
        'outer: for a in 0..tb.dg {
            for b in a + 1..tb.dg {
                let d = tb.rb_defect(a, b);
                if d.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                    let l = self.lie.labels();
                    direct = Some(Witness { inputs: vec![l[a].clone(), l[b].clone()], defect: d });
                    break 'outer;
                }
            }
        }
        let rel = self.as_relative().verify();
        CheckReport::from_routes("rota-baxter", direct, rel.ok)
    }
}

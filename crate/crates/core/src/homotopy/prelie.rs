//! Pre-Lie∞-algebras, their sub-adjacent L∞-algebras and the passage from
//! strict operators.

use super::linf::{verify_linfty_with, witness, LinftyAlgebra, LinftyRep};
use super::map::{mn_bracket_truncated, nr_bracket_truncated, phi, Arg, Flavor, GradedMap};
use super::rbo::{verify_homotopy_rbo, HomotopyRbo, HrboReport};
use super::space::GradedSpace;
use super::HomotopyError;
use crate::foundation::{graded_sym_basis, Matrix, Scalar, Strategy};
use crate::structures::CheckReport;
use num_traits::Zero;
use std::sync::Arc;

/// `𝔯 = Σ 𝔯_k`, `𝔯_k: Sym^{k−1}(V) ⊗ V → V` of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLieInf {
    space: Arc<GradedSpace>,
    r: GradedMap,
}

impl PreLieInf {
    /// Unverified structure.
    pub fn raw(r: GradedMap) -> Result<Self, HomotopyError> {
        if r.flavor() != Flavor::SymTensorToSelf {
            return Err(HomotopyError::FlavorMismatch { op: "pre-Lie-infinity structure", found: r.flavor() });
        }
        if !r.is_zero() && r.degree() != 1 {
            return Err(HomotopyError::Degree { expected: 1, got: r.degree() });
        }
        r.validate()?;
        let space = r.space().clone();
        let r = if r.is_zero() { GradedMap::zero(space.clone(), Flavor::SymTensorToSelf, 1) } else { r };
        Ok(PreLieInf { space, r })
    }

    /// Verified through `[𝔯, 𝔯]_MN = 0`.
    pub fn new(r: GradedMap) -> Result<Self, HomotopyError> {
        let p = Self::raw(r)?;
        let rep = p.verify();
        if !rep.ok {
            return Err(HomotopyError::Unverified(rep.check));
        }
        Ok(p)
    }

    pub fn zero(space: Arc<GradedSpace>) -> Self {
        PreLieInf { r: GradedMap::zero(space.clone(), Flavor::SymTensorToSelf, 1), space }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn structure(&self) -> &GradedMap {
        &self.r
    }

    pub fn arity_bound(&self) -> usize {
        self.r.max_weight()
    }

    /// `[𝔯, 𝔯]_MN`.
    pub fn mc_defect(&self) -> GradedMap {
        mn_bracket_truncated(&self.r, &self.r, usize::MAX)
    }

    /// Maurer–Cartan test in the MN algebra, cross-checked by pushing the
    /// defect through `Φ` and comparing with `[Φ𝔯, Φ𝔯]_NR`.
    pub fn verify(&self) -> CheckReport {
        let d = self.mc_defect();
        let ok = d.is_zero();
        let pr = phi(&self.r).expect("tensor flavor");
        let agree = phi(&d).expect("tensor flavor") == nr_bracket_truncated(&pr, &pr, usize::MAX);
        let first = d.entries().next().map(|(k, v)| witness(&self.space, k, v.clone()));
        CheckReport { check: "pre-Lie-infinity Maurer-Cartan equation".into(), ok, witness: first, routes_agree: agree }
    }

    fn require_verified(&self) -> Result<(), HomotopyError> {
        let r = self.verify();
        if r.ok {
            Ok(())
        } else {
            Err(HomotopyError::Unverified(r.check))
        }
    }

    /// `l_k = Φ(𝔯_k)`.
    pub fn subadjacent(&self) -> Result<LinftyAlgebra, HomotopyError> {
        self.require_verified()?;
        LinftyAlgebra::new(phi(&self.r)?)
    }

    /// `L_k(x_1..x_{k−1}, v) = 𝔯_k(x_1..x_{k−1}, v)` on a second copy of the space.
    pub fn left_mult_rep(&self) -> Result<LinftyRep, HomotopyError> {
        let alg = self.subadjacent()?;
        let n = self.space.dim();
        let w = Arc::new(self.space.direct_sum(&self.space));
        let mut rho = GradedMap::zero(w, Flavor::SymToSelf, 1);
        for (key, val) in self.r.entries() {
            let (last, head) = key.split_last().expect("nonempty key");
            let mut wk = head.to_vec();
            wk.push(last + n);
            for (o, x) in val.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                rho.add_term(&wk, o + n, x)?;
            }
        }
        LinftyRep::new(alg, self.space.clone(), rho)
    }

    /// `Id` from the left-multiplication representation to the sub-adjacent algebra.
    pub fn identity_operator(&self) -> Result<HomotopyRbo, HomotopyError> {
        let rep = self.left_mult_rep()?;
        HomotopyRbo::strict(rep, &Matrix::identity(self.space.dim()))
    }

    pub fn identity_is_strict_rbo(&self) -> Result<HrboReport, HomotopyError> {
        verify_homotopy_rbo(&self.identity_operator()?, None)
    }
}

/// Report for the three derived checks of a verified pre-Lie∞-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLieChecks {
    pub mc: CheckReport,
    pub subadjacent: CheckReport,
    pub left_mult: CheckReport,
    pub identity: CheckReport,
}

impl PreLieChecks {
    pub fn ok(&self) -> bool {
        self.mc.ok && self.subadjacent.ok && self.left_mult.ok && self.identity.ok
    }
}

pub fn prelie_checks(p: &PreLieInf) -> Result<PreLieChecks, HomotopyError> {
    let mc = p.verify();
    let alg = p.subadjacent()?;
    let subadjacent = verify_linfty_with(&alg, Strategy::default());
    let left_mult = super::linf::verify_linfty_rep(&p.left_mult_rep()?);
    let identity = p.identity_is_strict_rbo()?.report;
    Ok(PreLieChecks { mc, subadjacent, left_mult, identity })
}

fn require_strict_verified(op: &HomotopyRbo) -> Result<(), HomotopyError> {
    if !op.is_strict() {
        return Err(HomotopyError::NotStrict);
    }
    let r = verify_homotopy_rbo(op, None)?;
    if !r.report.ok {
        return Err(HomotopyError::Unverified(r.report.check));
    }
    Ok(())
}

/// `𝔯_k(v_1..v_k) = ρ_k(Tv_1, .., Tv_{k−1}, v_k)` for a strict operator.
pub fn strict_rbo_to_prelie(op: &HomotopyRbo) -> Result<PreLieInf, HomotopyError> {
    require_strict_verified(op)?;
    let rep = op.rep();
    let g = rep.g_dim();
    let v = rep.v_space().clone();
    let mut r = GradedMap::zero(v.clone(), Flavor::SymTensorToSelf, 1);
    for k in rep.rho().weights() {
        r = r.add(&GradedMap::from_fn(v.clone(), Flavor::SymTensorToSelf, 1, k, |key| {
            let (last, head) = key.split_last().expect("nonempty key");
            let ts: Vec<Vec<Scalar>> = head.iter().map(|&i| op.t().eval_basis(&[i + g])).collect();
            let mut args: Vec<Arg> = ts.iter().map(|x| Arg::Vector(x)).collect();
            args.push(Arg::Basis(last + g));
            rep.rho().eval_args(&args).split_off(g)
        }));
    }
    PreLieInf::new(r)
}

/// `T l'_k(v_1..v_k) = l_k(Tv_1..Tv_k)` on all basis tuples up to `max_n`,
/// where `l'` is the sub-adjacent structure of `prelie`.
pub fn strict_morphism_check(op: &HomotopyRbo, prelie: &PreLieInf, max_n: usize) -> Result<CheckReport, HomotopyError> {
    let sub = prelie.subadjacent()?;
    let rep = op.rep();
    let g = rep.g_dim();
    let l = rep.alg().structure();
    let t = op.t1_matrix();
    let v = rep.v_space();
    let mut first = None;
    'outer: for n in 1..=max_n {
        for key in graded_sym_basis(n, v.degrees()) {
            let lhs = t.mul_vec(&sub.structure().eval_basis(&key));
            let ts: Vec<Vec<Scalar>> = key.iter().map(|&i| t.column(i)).collect();
            let args: Vec<Arg> = ts.iter().map(|x| Arg::Vector(x)).collect();
            let rhs = l.eval_args(&args);
            if lhs != rhs {
                let d = lhs.into_iter().zip(rhs).map(|(a, b)| a - b).collect();
                let wk: Vec<usize> = key.iter().map(|&i| i + g).collect();
                first = Some(witness(rep.w_space(), &wk, d));
                break 'outer;
            }
        }
    }
    Ok(CheckReport { check: "strict L-infinity morphism".into(), ok: first.is_none(), witness: first, routes_agree: true })
}

/// Pre-Lie∞ structure `𝔬_k(x_1..x_k) = Tρ_k(x_1, .., x_{k−1}, T⁻¹x_k)` on `g`
/// for an invertible strict operator, together with whether `Φ(𝔬) = l`.
pub fn invertible_correspondence(op: &HomotopyRbo) -> Result<(PreLieInf, bool), HomotopyError> {
    require_strict_verified(op)?;
    let t = op.t1_matrix();
    if t.rows() != t.cols() {
        return Err(HomotopyError::NotInvertible);
    }
    let tinv = t.inverse().ok_or(HomotopyError::NotInvertible)?;
    let rep = op.rep();
    let g = rep.g_dim();
    let gs = rep.alg().space().clone();
    let mut o = GradedMap::zero(gs.clone(), Flavor::SymTensorToSelf, 1);
    for k in rep.rho().weights() {
        o = o.add(&GradedMap::from_fn(gs.clone(), Flavor::SymTensorToSelf, 1, k, |key| {
            let (last, head) = key.split_last().expect("nonempty key");
            let mut u = vec![Scalar::zero(); g];
            u.extend(tinv.column(*last));
            let mut args: Vec<Arg> = head.iter().map(|&i| Arg::Basis(i)).collect();
            args.push(Arg::Vector(&u));
            t.mul_vec(&rep.rho().eval_args(&args)[g..])
        }));
    }
    let p = PreLieInf::new(o)?;
    let compatible = phi(p.structure())? == *rep.alg().structure();
    Ok((p, compatible))
}

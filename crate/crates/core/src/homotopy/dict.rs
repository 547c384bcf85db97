//! Desuspension dictionary between ungraded structures and L∞ data.
//!
//! A cochain in `Hom(∧^k W, W)` becomes a map on `s⁻¹W` (every basis vector
//! of degree −1) of intrinsic degree `k − 1`. On an all-odd space graded
//! symmetry is ordinary antisymmetry, so the coefficients on sorted tuples
//! are carried over unchanged; the classical and graded NR brackets then
//! agree coefficientwise. For a differential graded Lie algebra the
//! dictionary reads `l_1(s⁻¹x) = s⁻¹dx`, `l_2(s⁻¹x, s⁻¹y) = (−1)^{|x|} s⁻¹[x,y]`.

use super::linf::{LinftyAlgebra, LinftyRep};
use super::map::{Flavor, GradedMap};
use super::rbo::HomotopyRbo;
use super::space::GradedSpace;
use super::HomotopyError;
use crate::foundation::{Matrix, Scalar};
use crate::nrcore::{Cochain, Split};
use crate::structures::{LieAlgebra, RelativeRbo, Representation};
use num_traits::Zero;
use std::sync::Arc;

/// `s⁻¹` of an ungraded space with the given labels.
pub fn desuspended_space(labels: &[String]) -> Arc<GradedSpace> {
    let s = GradedSpace::new(vec![0; labels.len()], labels.to_vec()).expect("matching labels");
    Arc::new(s.desuspension())
}

pub fn encode(c: &Cochain, space: &Arc<GradedSpace>) -> GradedMap {
    assert!(space.degrees().iter().all(|&d| d == -1) && space.dim() == c.split().total());
    let mut m = GradedMap::zero(space.clone(), Flavor::SymToSelf, c.degree());
    for (idx, o, x) in c.nonzero() {
        m.add_term(&idx, o, &x).expect("odd slots");
    }
    m
}

/// Inverse of [`encode`] on a single weight.
pub fn decode(f: &GradedMap, split: Split) -> Result<Cochain, HomotopyError> {
    if f.space().degrees().iter().any(|&d| d != -1) || f.space().dim() != split.total() {
        return Err(HomotopyError::Support("decoding needs the desuspension of an ungraded space".into()));
    }
    let ws = f.weights();
    if ws.len() > 1 {
        return Err(HomotopyError::Support(format!("mixed weights {ws:?}")));
    }
    let arity = ws.first().copied().unwrap_or((f.degree() + 1).max(0) as usize);
    let mut c = Cochain::zero(split, arity);
    for (k, v) in f.entries() {
        for (o, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            c.set(k, o, x.clone());
        }
    }
    Ok(c)
}

pub fn desuspend_lie(lie: &LieAlgebra) -> LinftyAlgebra {
    let s = desuspended_space(lie.labels());
    LinftyAlgebra::new(encode(lie.mu(), &s)).expect("degree 1 bracket")
}

/// `ρ_2(s⁻¹x, s⁻¹v) = s⁻¹ρ(x)v` on `s⁻¹g ⊕ s⁻¹V`.
pub fn desuspend_rep(rep: &Representation) -> LinftyRep {
    let alg = desuspend_lie(rep.lie());
    let w = desuspended_space(&rep.labels_w());
    let split = rep.split();
    let rho = rep.pi().filter(|idx, _| idx.iter().any(|&i| !split.is_g(i)));
    let v = desuspended_space(rep.labels_v());
    LinftyRep::new(alg, v, encode(&rho, &w)).expect("representation slots")
}

/// Strict operator with `T_1 = T`.
pub fn desuspend_rbo(op: &RelativeRbo) -> HomotopyRbo {
    HomotopyRbo::strict(desuspend_rep(op.rep()), op.t()).expect("operator slots")
}

/// Ungraded Lie algebra of an L∞-algebra concentrated in degree −1 with only `l_2`.
pub fn suspend_lie(alg: &LinftyAlgebra) -> Result<LieAlgebra, HomotopyError> {
    let s = alg.space();
    let mu = decode(&alg.bracket_map(2), Split::pure(s.dim()))?;
    if alg.structure().weights().iter().any(|&k| k != 2) {
        return Err(HomotopyError::Support("only binary brackets have an ungraded counterpart".into()));
    }
    Ok(LieAlgebra::from_cochain(mu, Some(s.suspension().labels().to_vec()))?)
}

pub fn suspend_rep(rep: &LinftyRep) -> Result<Representation, HomotopyError> {
    let lie = suspend_lie(rep.alg())?;
    let g = rep.g_dim();
    let dv = rep.v_space().dim();
    let split = Split::new(g, dv);
    let c = decode(&rep.rho().component(2), split)?;
    if rep.rho().weights().iter().any(|&k| k != 2) {
        return Err(HomotopyError::Support("only binary actions have an ungraded counterpart".into()));
    }
    let rho: Vec<Matrix> = (0..g)
        .map(|i| {
            let mut m = Matrix::zeros(dv, dv);
            for a in 0..dv {
                for (b, x) in c.eval_basis(&[i, g + a]).into_iter().skip(g).enumerate() {
                    m.set(b, a, x);
                }
            }
            m
        })
        .collect();
    let labels = rep.v_space().suspension().labels().to_vec();
    Ok(Representation::new(lie, dv, rho)?.with_labels(labels)?)
}

/// Unverified ungraded operator of a strict operator on desuspended data.
pub fn suspend_rbo(op: &HomotopyRbo) -> Result<RelativeRbo, HomotopyError> {
    if !op.is_strict() {
        return Err(HomotopyError::NotStrict);
    }
    Ok(RelativeRbo::raw(suspend_rep(op.rep())?, op.t1_matrix())?)
}

/// Differential graded Lie algebra with `d` and `[,]` given by structure
/// constants on a homogeneous basis: `d e_i ∋ c e_j` as `(i, j, c)` and
/// `[e_i, e_j] ∋ c e_k` as `(i, j, k, c)`, each unordered pair listed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgLie {
    pub space: GradedSpace,
    pub d: Vec<(usize, usize, Scalar)>,
    pub bracket: Vec<(usize, usize, usize, Scalar)>,
}

/// `l_1(s⁻¹x) = s⁻¹dx`, `l_2(s⁻¹x, s⁻¹y) = (−1)^{|x|} s⁻¹[x,y]`.
pub fn desuspend_dgla(dg: &DgLie) -> Result<LinftyAlgebra, HomotopyError> {
    let s = Arc::new(dg.space.desuspension());
    let mut l = GradedMap::zero(s.clone(), Flavor::SymToSelf, 1);
    for (i, j, c) in &dg.d {
        l.add_term(&[*i], *j, c)?;
    }
    for (i, j, k, c) in &dg.bracket {
        let c = if dg.space.degree(*i).rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
        l.add_term(&[*i, *j], *k, &c)?;
    }
    LinftyAlgebra::new(l)
}

//! L∞-algebras and their representations on graded spaces.

use super::map::{nr_compose, Arg, Flavor, GradedMap};
use super::space::{GradedSpace, GradedVec};
use super::HomotopyError;
use crate::foundation::par::map_indices;
use crate::foundation::{graded_sym_basis, koszul_sign, shuffles, MultiIndex, Scalar, Strategy};
use crate::linfty::{jacobi_defect, Linfty};
use crate::structures::{CheckReport, Witness};
use num_traits::Zero;
use std::sync::Arc;

/// Graded space with brackets `l_k` of degree 1, stored as `Σ l_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinftyAlgebra {
    space: Arc<GradedSpace>,
    structure: GradedMap,
}

impl LinftyAlgebra {
    pub fn new(structure: GradedMap) -> Result<Self, HomotopyError> {
        if structure.flavor() == Flavor::SymTensorToSelf {
            return Err(HomotopyError::FlavorMismatch { op: "L-infinity structure", found: structure.flavor() });
        }
        if !structure.is_zero() && structure.degree() != 1 {
            return Err(HomotopyError::Degree { expected: 1, got: structure.degree() });
        }
        structure.validate()?;
        let space = structure.space().clone();
        let structure = if structure.is_zero() {
            GradedMap::zero(space.clone(), Flavor::SymToSelf, 1)
        } else {
            structure.with_flavor(Flavor::SymToSelf)
        };
        Ok(LinftyAlgebra { space, structure })
    }

    pub fn abelian(space: Arc<GradedSpace>) -> Self {
        LinftyAlgebra { structure: GradedMap::zero(space.clone(), Flavor::SymToSelf, 1), space }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    /// `Σ_k l_k ∈ C¹(V, V)`.
    pub fn structure(&self) -> &GradedMap {
        &self.structure
    }

    pub fn bracket_map(&self, k: usize) -> GradedMap {
        self.structure.component(k)
    }

    /// Largest `k` with `l_k ≠ 0`; all higher brackets vanish.
    pub fn arity_bound(&self) -> usize {
        self.structure.max_weight()
    }

    pub fn basis_vector(&self, i: usize) -> GradedVec {
        self.space.basis_vector(i)
    }
}

impl Linfty for LinftyAlgebra {
    type Elem = GradedVec;
    fn zero(&self, degree: i32) -> GradedVec {
        GradedVec { degree, coords: vec![Scalar::zero(); self.space.dim()] }
    }
    fn bracket(&self, args: &[&GradedVec]) -> GradedVec {
        let degree = args.iter().map(|a| a.degree).sum::<i32>() + 1;
        let vs: Vec<&[Scalar]> = args.iter().map(|a| a.coords.as_slice()).collect();
        GradedVec { degree, coords: self.structure.eval(&vs) }
    }
}

pub(crate) fn witness(space: &GradedSpace, key: &[usize], defect: Vec<Scalar>) -> Witness {
    Witness { inputs: key.iter().map(|&i| space.labels()[i].clone()).collect(), defect }
}

fn all_keys(space: &GradedSpace, max_n: usize) -> Vec<MultiIndex> {
    (1..=max_n).flat_map(|n| graded_sym_basis(n, space.degrees())).collect()
}

/// Generalized Jacobi identities up to total arity `2·arity_bound`, by direct
/// shuffle sums on basis tuples and, independently, through `l ∘̄ l = ½[l,l]_NR`.
/// `routes_agree` requires the two defects to coincide on every tuple.
pub fn verify_linfty(alg: &LinftyAlgebra) -> CheckReport {
    verify_linfty_with(alg, Strategy::default())
}

pub fn verify_linfty_with(alg: &LinftyAlgebra, strategy: Strategy) -> CheckReport {
    let max_n = 2 * alg.arity_bound();
    let sq = nr_compose(&alg.structure, &alg.structure, max_n);
    let keys = all_keys(&alg.space, max_n);
    let defects = map_indices(strategy, keys.len(), |i| {
        let xs: Vec<GradedVec> = keys[i].iter().map(|&k| alg.basis_vector(k)).collect();
        jacobi_defect(alg, &xs).coords
    });
    let mut first = None;
    let mut agree = true;
    for (key, d) in keys.iter().zip(defects) {
        agree &= d == sq.eval_basis(key);
        if first.is_none() && d.iter().any(|x| !x.is_zero()) {
            first = Some(witness(&alg.space, key, d));
        }
    }
    let direct_ok = first.is_none();
    CheckReport {
        check: "generalized Jacobi identity".into(),
        ok: direct_ok && sq.is_zero(),
        routes_agree: agree && direct_ok == sq.is_zero(),
        witness: first,
    }
}

/// Representation `ρ_k: Sym^{k−1}(g) ⊗ V → V` of degree 1, stored as a map on
/// `W = g ⊕ V` supported on inputs with exactly one vector of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinftyRep {
    alg: LinftyAlgebra,
    v: Arc<GradedSpace>,
    w: Arc<GradedSpace>,
    rho: GradedMap,
}

impl LinftyRep {
    pub fn new(alg: LinftyAlgebra, v: Arc<GradedSpace>, rho: GradedMap) -> Result<Self, HomotopyError> {
        let w = Arc::new(alg.space().direct_sum(&v));
        if **rho.space() != *w {
            return Err(HomotopyError::SpaceMismatch);
        }
        if !rho.is_zero() && rho.degree() != 1 {
            return Err(HomotopyError::Degree { expected: 1, got: rho.degree() });
        }
        rho.validate()?;
        let g = alg.space().dim();
        for (key, val) in rho.entries() {
            let nv = key.iter().filter(|&&i| i >= g).count();
            if nv != 1 || val[..g].iter().any(|x| !x.is_zero()) {
                return Err(HomotopyError::Support(format!("{key:?} is not of the form (g, .., g, V) -> V")));
            }
        }
        let rho = if rho.is_zero() { GradedMap::zero(w.clone(), Flavor::SymToSelf, 1) } else { rho };
        Ok(LinftyRep { alg, v, w, rho })
    }

    pub fn zero(alg: LinftyAlgebra, v: Arc<GradedSpace>) -> Self {
        let w = Arc::new(alg.space().direct_sum(&v));
        LinftyRep { rho: GradedMap::zero(w.clone(), Flavor::SymToSelf, 1), alg, v, w }
    }

    /// `V = g` with `ρ_k = l_k`.
    pub fn adjoint(alg: &LinftyAlgebra) -> Self {
        let g = alg.space().dim();
        let v = alg.space().clone();
        let w = Arc::new(alg.space().direct_sum(&v));
        let mut rho = GradedMap::zero(w.clone(), Flavor::SymToSelf, 1);
        for k in alg.structure().weights() {
            let comp = GradedMap::from_fn(w.clone(), Flavor::SymToSelf, 1, k, |key| {
                let mut out = vec![Scalar::zero(); 2 * g];
                if key.iter().filter(|&&i| i >= g).count() == 1 {
                    let args: Vec<usize> = key.iter().map(|&i| if i >= g { i - g } else { i }).collect();
                    for (o, x) in alg.structure().eval_basis(&args).into_iter().enumerate() {
                        out[g + o] = x;
                    }
                }
                out
            });
            rho = rho.add(&comp);
        }
        LinftyRep { alg: alg.clone(), v, w, rho }
    }

    pub fn alg(&self) -> &LinftyAlgebra {
        &self.alg
    }

    pub fn v_space(&self) -> &Arc<GradedSpace> {
        &self.v
    }

    /// `g ⊕ V`.
    pub fn w_space(&self) -> &Arc<GradedSpace> {
        &self.w
    }

    pub fn g_dim(&self) -> usize {
        self.alg.space().dim()
    }

    pub fn rho(&self) -> &GradedMap {
        &self.rho
    }

    /// `l` extended by zero to `W`.
    pub fn lifted_l(&self) -> GradedMap {
        lift(&self.alg.structure, &self.w, 0)
    }

    /// `Δ = Σ (l_k + ρ_k)`, the semidirect-product structure on `W`.
    pub fn delta(&self) -> GradedMap {
        self.lifted_l().add(&self.rho)
    }

    pub fn arity_bound(&self) -> usize {
        self.alg.arity_bound().max(self.rho.max_weight())
    }
}

pub(crate) fn lift(f: &GradedMap, target: &Arc<GradedSpace>, offset: usize) -> GradedMap {
    f.shifted(target.clone(), Flavor::SymToSelf, offset as isize)
}

/// Direct evaluation of the representation identity on `(x_1, …, x_{n−1}, v)`:
/// `Σ_i Σ_{S(i,n−i−1)} ε ρ(l_i(x..), x.., v) + Σ_i Σ_{S(n−i,i−1)} ε (−1)^{x..} ρ(x.., ρ(x.., v))`.
pub fn rep_identity_defect(rep: &LinftyRep, xs: &[usize], v: usize) -> Vec<Scalar> {
    let w = &rep.w;
    let n = xs.len() + 1;
    let xd: Vec<i32> = xs.iter().map(|&i| w.degree(i)).collect();
    let l = rep.lifted_l();
    let mut acc = vec![Scalar::zero(); w.dim()];
    let add = |acc: &mut Vec<Scalar>, t: Vec<Scalar>, s: i32| {
        for (a, x) in acc.iter_mut().zip(t) {
            if s > 0 {
                *a += x;
            } else {
                *a -= x;
            }
        }
    };
    for i in 1..n {
        for s in shuffles(&[i, n - i - 1]) {
            let inner: Vec<usize> = s.perm[..i].iter().map(|&p| xs[p]).collect();
            let y = l.eval_basis(&inner);
            if y.iter().all(Zero::is_zero) {
                continue;
            }
            let mut args = vec![Arg::Vector(&y)];
            args.extend(s.perm[i..].iter().map(|&p| Arg::Basis(xs[p])));
            args.push(Arg::Basis(v));
            add(&mut acc, rep.rho.eval_args(&args), koszul_sign(&s.perm, &xd));
        }
    }
    for i in 1..=n {
        for s in shuffles(&[n - i, i - 1]) {
            let mut inner: Vec<usize> = s.perm[n - i..].iter().map(|&p| xs[p]).collect();
            inner.push(v);
            let u = rep.rho.eval_basis(&inner);
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            let head: i64 = s.perm[..n - i].iter().map(|&p| xd[p] as i64).sum();
            let mut args: Vec<Arg> = s.perm[..n - i].iter().map(|&p| Arg::Basis(xs[p])).collect();
            args.push(Arg::Vector(&u));
            let sign = koszul_sign(&s.perm, &xd) * if head.rem_euclid(2) == 1 { -1 } else { 1 };
            add(&mut acc, rep.rho.eval_args(&args), sign);
        }
    }
    acc
}

/// Representation identities by direct evaluation, cross-checked against the
/// semidirect-product criterion `[Δ,Δ]_NR = 0` for `Δ = Σ(l_k + ρ_k)`.
pub fn verify_linfty_rep(rep: &LinftyRep) -> CheckReport {
    let max_n = 2 * rep.arity_bound();
    let delta = rep.delta();
    let sq = nr_compose(&delta, &delta, max_n);
    let g = rep.g_dim();
    let gdegs = &rep.w.degrees()[..g];
    let mut tuples = Vec::new();
    for n in 1..=max_n {
        let heads = if n == 1 { vec![vec![]] } else { graded_sym_basis(n - 1, gdegs) };
        for h in heads {
            for v in g..rep.w.dim() {
                tuples.push((h.clone(), v));
            }
        }
    }
    let defects = map_indices(Strategy::default(), tuples.len(), |i| rep_identity_defect(rep, &tuples[i].0, tuples[i].1));
    let mut first = None;
    let mut agree = true;
    for ((xs, v), d) in tuples.iter().zip(defects) {
        let mut key = xs.clone();
        key.push(*v);
        agree &= d == sq.eval_basis(&key);
        if first.is_none() && d.iter().any(|x| !x.is_zero()) {
            first = Some(witness(&rep.w, &key, d));
        }
    }
    let direct_ok = first.is_none();
    let rep_part_zero = sq.filter(|k, _| k.iter().filter(|&&i| i >= g).count() == 1).is_zero();
    CheckReport {
        check: "L-infinity representation".into(),
        ok: direct_ok && sq.is_zero(),
        routes_agree: agree && direct_ok == rep_part_zero,
        witness: first,
    }
}

/// `l_k((x_1,v_1), …, (x_k,v_k)) = (l_k(x..), Σ_i (−1)^{x_i(x_{i+1}+…+x_k)} ρ_k(x..x̂_i..x_k, v_i))`
/// on homogeneous pairs given as `(degree, g-coordinates, V-coordinates)`.
pub fn semidirect_bracket(rep: &LinftyRep, args: &[(i32, Vec<Scalar>, Vec<Scalar>)]) -> (Vec<Scalar>, Vec<Scalar>) {
    let g = rep.g_dim();
    let wd = rep.w.dim();
    let xs: Vec<Vec<Scalar>> = args.iter().map(|(_, x, _)| x.clone()).collect();
    let xr: Vec<&[Scalar]> = xs.iter().map(Vec::as_slice).collect();
    let gx = rep.alg.structure.eval(&xr);
    let mut vout = vec![Scalar::zero(); wd - g];
    let lifted: Vec<Vec<Scalar>> = xs
        .iter()
        .map(|x| {
            let mut e = x.clone();
            e.resize(wd, Scalar::zero());
            e
        })
        .collect();
    for i in 0..args.len() {
        let after: i64 = args[i + 1..].iter().map(|a| a.0 as i64).sum();
        let sign = if (args[i].0 as i64 * after).rem_euclid(2) == 1 { -Scalar::from_integer(1.into()) } else { Scalar::from_integer(1.into()) };
        let mut vi = vec![Scalar::zero(); g];
        vi.extend(args[i].2.iter().cloned());
        let mut slot: Vec<Arg> = (0..args.len()).filter(|&j| j != i).map(|j| Arg::Vector(&lifted[j])).collect();
        slot.push(Arg::Vector(&vi));
        for (o, x) in rep.rho.eval_args(&slot)[g..].iter().enumerate() {
            vout[o] += x * &sign;
        }
    }
    (gx, vout)
}

/// `g ⋉_ρ V`, built from the displayed semidirect formula on basis pairs.
pub fn semidirect(rep: &LinftyRep) -> Result<LinftyAlgebra, HomotopyError> {
    let r = verify_linfty_rep(rep);
    if !r.ok {
        return Err(HomotopyError::Unverified(r.check));
    }
    let g = rep.g_dim();
    let w = rep.w.clone();
    let pair = |i: usize| {
        let mut x = vec![Scalar::zero(); g];
        let mut v = vec![Scalar::zero(); w.dim() - g];
        if i < g {
            x[i] = Scalar::from_integer(1.into());
        } else {
            v[i - g] = Scalar::from_integer(1.into());
        }
        (w.degree(i), x, v)
    };
    let mut s = GradedMap::zero(w.clone(), Flavor::SymToSelf, 1);
    for k in 1..=rep.arity_bound() {
        s = s.add(&GradedMap::from_fn(w.clone(), Flavor::SymToSelf, 1, k, |key| {
            let args: Vec<_> = key.iter().map(|&i| pair(i)).collect();
            let (x, v) = semidirect_bracket(rep, &args);
            x.into_iter().chain(v).collect()
        }));
    }
    LinftyAlgebra::new(s)
}

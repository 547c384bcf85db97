//! V-data, derived brackets and homotopy relative Rota–Baxter operators.

use super::linf::{lift, verify_linfty, verify_linfty_rep, witness, LinftyAlgebra, LinftyRep};
use super::map::{nr_bracket_truncated, Arg, Flavor, GradedMap, NrGraded};
use super::space::GradedSpace;
use super::HomotopyError;
use crate::foundation::combinat::compositions;
use crate::foundation::par::map_indices;
use crate::foundation::scalar::factorial;
use crate::foundation::{graded_sym_basis, koszul_sign, shuffles, Matrix, MultiIndex, Scalar, Strategy};
use crate::linfty::{mc_value, BiggerLinfty, DerivedBrackets, Linfty, Shifted};
use crate::structures::CheckReport;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Keeps the coefficients of `f` with all inputs in `V` and output in `g`.
pub fn project_h(f: &GradedMap, g_dim: usize) -> GradedMap {
    let p = f.filter(|k, o| o < g_dim && k.iter().all(|&i| i >= g_dim));
    if p.is_zero() {
        p
    } else {
        p.with_flavor(Flavor::SymToG { g_dim })
    }
}

/// Whether `f ∈ Hom(Sym(V), g)`.
pub fn in_h(f: &GradedMap, g_dim: usize) -> bool {
    project_h(f, g_dim) == *f
}

/// Coefficient slots of `⊕_n C^{n|0}(g ⊕ V, g ⊕ V)`: all inputs in `g` with
/// output in `g`, or exactly one input in `V` with output in `V`.
pub fn lprime_slot(g_dim: usize) -> impl Fn(&[usize], usize) -> bool + Clone {
    move |k, o| match k.iter().filter(|&&i| i >= g_dim).count() {
        0 => o < g_dim,
        1 => o >= g_dim,
        _ => false,
    }
}

/// `(C*(g ⊕ V, g ⊕ V), Hom(Sym(V), g), P, Δ = Σ(l_k + ρ_k))`.
#[derive(Clone, Debug)]
pub struct VData {
    rep: LinftyRep,
    delta: GradedMap,
}

impl VData {
    pub fn new(rep: LinftyRep) -> Result<Self, HomotopyError> {
        let r = verify_linfty_rep(&rep);
        if !r.ok {
            return Err(HomotopyError::Unverified(r.check));
        }
        let delta = rep.delta();
        Ok(VData { rep, delta })
    }

    pub fn rep(&self) -> &LinftyRep {
        &self.rep
    }

    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }

    pub fn g_dim(&self) -> usize {
        self.rep.g_dim()
    }

    pub fn w_space(&self) -> &Arc<GradedSpace> {
        self.rep.w_space()
    }

    pub fn project(&self, f: &GradedMap) -> GradedMap {
        project_h(f, self.g_dim())
    }

    /// `(h, 𝔩_k)` with `𝔩_k(a_1..a_k) = P[..[Δ,a_1]..,a_k]`, exact in weights
    /// `≤ max_weight`.
    pub fn derived_brackets(&self, max_weight: usize) -> DerivedBrackets<NrGraded> {
        let g = self.g_dim();
        DerivedBrackets {
            alg: NrGraded { space: self.w_space().clone(), max_weight },
            project: Box::new(move |f| project_h(f, g)),
            delta: self.delta.clone(),
        }
    }

    pub fn derived_bracket(&self, args: &[&GradedMap], max_weight: usize) -> Result<GradedMap, HomotopyError> {
        for (i, a) in args.iter().enumerate() {
            if **a.space() != **self.w_space() || !in_h(a, self.g_dim()) {
                return Err(HomotopyError::NotInH(format!("argument {}", i + 1)));
            }
        }
        Ok(self.derived_brackets(max_weight).bracket(args))
    }

    /// The L∞-algebra on `s⁻¹L ⊕ h` built from this V-data.
    pub fn bigger_linfty(&self, max_weight: usize) -> BiggerLinfty<NrGraded> {
        bigger_on(self.w_space().clone(), self.g_dim(), Some(self.delta.clone()), max_weight)
    }

    /// Checks `[Δ, L'] ⊆ L'` and `[L', L'] ⊆ L'` on the coordinate generators
    /// of `L'` up to `max_weight`, reporting the first failing generator.
    pub fn check_closure(
        &self,
        keep: impl Fn(&[usize], usize) -> bool,
        max_weight: usize,
    ) -> Result<(), HomotopyError> {
        let w = self.w_space();
        let gens = generators(w, &keep, max_weight);
        let outside = |f: &GradedMap| !f.filter(|k, o| !keep(k, o)).is_zero();
        for (label, e) in &gens {
            if outside(&nr_bracket_truncated(&self.delta, e, max_weight)) {
                return Err(HomotopyError::Closure { generator: label.clone() });
            }
        }
        for (i, (la, a)) in gens.iter().enumerate() {
            for (lb, b) in &gens[i..] {
                if outside(&nr_bracket_truncated(a, b, max_weight)) {
                    return Err(HomotopyError::Closure { generator: format!("[{la}, {lb}]") });
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn bigger_on(
    w: Arc<GradedSpace>,
    g_dim: usize,
    delta: Option<GradedMap>,
    max_weight: usize,
) -> BiggerLinfty<NrGraded> {
    BiggerLinfty {
        alg: NrGraded { space: w, max_weight },
        project: Box::new(move |f| project_h(f, g_dim)),
        delta,
    }
}

/// Unit maps `e_key ↦ e_out` admitted by `keep`, all intrinsic degrees.
fn generators(
    w: &Arc<GradedSpace>,
    keep: &impl Fn(&[usize], usize) -> bool,
    max_weight: usize,
) -> Vec<(String, GradedMap)> {
    let mut out = Vec::new();
    for k in 1..=max_weight {
        for key in graded_sym_basis(k, w.degrees()) {
            for o in 0..w.dim() {
                if !keep(&key, o) {
                    continue;
                }
                let deg = w.degree(o) - key.iter().map(|&i| w.degree(i)).sum::<i32>();
                let mut m = GradedMap::zero(w.clone(), Flavor::SymToSelf, deg);
                m.add_term(&key, o, &Scalar::one()).expect("generator slot");
                let ins: Vec<&str> = key.iter().map(|&i| w.labels()[i].as_str()).collect();
                out.push((format!("({}) -> {}", ins.join(", "), w.labels()[o]), m));
            }
        }
    }
    out
}

/// `T = Σ T_k`, `T_k: Sym^k(V) → g` of degree 0, stored on `W = g ⊕ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyRbo {
    rep: LinftyRep,
    t: GradedMap,
}

impl HomotopyRbo {
    pub fn new(rep: LinftyRep, t: GradedMap) -> Result<Self, HomotopyError> {
        if **t.space() != **rep.w_space() {
            return Err(HomotopyError::SpaceMismatch);
        }
        if !t.is_zero() && t.degree() != 0 {
            return Err(HomotopyError::Degree { expected: 0, got: t.degree() });
        }
        let g_dim = rep.g_dim();
        if !in_h(&t, g_dim) {
            return Err(HomotopyError::Support("T must map Sym(V) to g".into()));
        }
        let t = if t.is_zero() { GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim }, 0) } else { t };
        t.validate()?;
        Ok(HomotopyRbo { rep, t })
    }

    pub fn zero(rep: LinftyRep) -> Self {
        let t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: rep.g_dim() }, 0);
        HomotopyRbo { rep, t }
    }

    /// Strict operator `T = T_1` from a `dim g × dim V` matrix.
    pub fn strict(rep: LinftyRep, t1: &Matrix) -> Result<Self, HomotopyError> {
        let g = rep.g_dim();
        let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: g }, 0);
        for (&(i, a), x) in t1.entries() {
            t.add_term(&[g + a], i, x)?;
        }
        Self::new(rep, t)
    }

    pub fn rep(&self) -> &LinftyRep {
        &self.rep
    }

    pub fn t(&self) -> &GradedMap {
        &self.t
    }

    pub fn weight_bound(&self) -> usize {
        self.t.max_weight()
    }

    pub fn is_strict(&self) -> bool {
        self.t.max_weight() <= 1
    }

    /// Matrix of `T_1`.
    pub fn t1_matrix(&self) -> Matrix {
        let g = self.rep.g_dim();
        let dv = self.rep.v_space().dim();
        let mut m = Matrix::zeros(g, dv);
        for a in 0..dv {
            for (i, x) in self.t.eval_basis(&[g + a]).into_iter().take(g).enumerate() {
                m.set(i, a, x);
            }
        }
        m
    }

    /// Both sides of the defining equations vanish identically for
    /// `p > arity · weight_bound`; checks up to `default_p_max` are always
    /// admitted.
    pub fn certified_bound(&self) -> usize {
        (self.rep.arity_bound() * self.weight_bound()).max(self.default_p_max())
    }

    pub fn default_p_max(&self) -> usize {
        self.rep.arity_bound() + 2
    }
}

type Blocks = Vec<Vec<usize>>;

/// `(blocks, ε(σ))` for every `σ ∈ S(sizes)` applied to `key`.
fn block_shuffles(key: &[usize], degs: &[i32], sizes: &[usize]) -> Vec<(Blocks, i32)> {
    shuffles(sizes)
        .into_iter()
        .map(|s| {
            let mut blocks = Vec::with_capacity(sizes.len());
            let mut at = 0;
            for &n in sizes {
                blocks.push(s.perm[at..at + n].iter().map(|&p| key[p]).collect());
                at += n;
            }
            (blocks, koszul_sign(&s.perm, degs))
        })
        .collect()
}

fn bounded_compositions(t: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    (0..=max_parts.min(t))
        .flat_map(|m| compositions(t, m))
        .filter(|c| c.iter().all(|&k| k <= max_part))
        .collect()
}

fn axpy(acc: &mut [Scalar], v: &[Scalar], c: &Scalar) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x * c;
        }
    }
}

fn signed(sign: i32, c: Scalar) -> Scalar {
    if sign > 0 {
        c
    } else {
        -c
    }
}

/// `Σ_n Σ_{k_1+..+k_n=p} Σ_{S(k_1..k_n)} ε/n! l_n(T_{k_1}(..), .., T_{k_n}(..))` on `key`.
fn l_of_t(l: &GradedMap, t: &GradedMap, key: &[usize], degs: &[i32], a: usize, b: usize) -> Vec<Scalar> {
    let dim = l.space().dim();
    let mut acc = vec![Scalar::zero(); dim];
    for comp in bounded_compositions(key.len(), a, b) {
        if comp.is_empty() {
            continue;
        }
        let c = factorial(comp.len()).recip();
        for (blocks, sign) in block_shuffles(key, degs, &comp) {
            let ts: Vec<Vec<Scalar>> = blocks.iter().map(|bl| t.eval_basis(bl)).collect();
            if ts.iter().any(|x| x.iter().all(Zero::is_zero)) {
                continue;
            }
            let args: Vec<Arg> = ts.iter().map(|x| Arg::Vector(x)).collect();
            axpy(&mut acc, &l.eval_args(&args), &signed(sign, c.clone()));
        }
    }
    acc
}

/// `Σ_m Σ_{k_1+..+k_m=t} Σ_{S(k_1..k_m,1,rest)} ε/m! ρ_{m+1}(T(..), .., v)` as a
/// list of `(value, trailing inputs, coefficient)`.
fn rho_of_t(
    rho: &GradedMap,
    t: &GradedMap,
    key: &[usize],
    degs: &[i32],
    tt: usize,
    a: usize,
    b: usize,
) -> Vec<(Vec<Scalar>, Vec<usize>, Scalar)> {
    let rest = key.len() - tt - 1;
    let mut out = Vec::new();
    for comp in bounded_compositions(tt, a.saturating_sub(1), b) {
        let m = comp.len();
        let c = factorial(m).recip();
        let mut sizes = comp.clone();
        sizes.push(1);
        sizes.push(rest);
        for (blocks, sign) in block_shuffles(key, degs, &sizes) {
            let ts: Vec<Vec<Scalar>> = blocks[..m].iter().map(|bl| t.eval_basis(bl)).collect();
            if ts.iter().any(|x| x.iter().all(Zero::is_zero)) {
                continue;
            }
            let mut args: Vec<Arg> = ts.iter().map(|x| Arg::Vector(x)).collect();
            args.push(Arg::Basis(blocks[m][0]));
            let u = rho.eval_args(&args);
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            out.push((u, blocks[m + 1].clone(), signed(sign, c.clone())));
        }
    }
    out
}

/// `RHS − LHS` of the defining equation on the `V`-basis tuple `key` (indices
/// into `W`). The left side runs over `0 ≤ t ≤ p − 1`; the `t = 0` term is
/// `T_p(ρ_1(v_σ(1)), v_σ(2..p))`.
pub fn hrbo_defect(op: &HomotopyRbo, key: &[usize]) -> Vec<Scalar> {
    let w = op.rep.w_space();
    let degs: Vec<i32> = key.iter().map(|&i| w.degree(i)).collect();
    let (a, b) = (op.rep.arity_bound(), op.weight_bound());
    let l = op.rep.lifted_l();
    let mut acc = l_of_t(&l, &op.t, key, &degs, a, b);
    let p = key.len();
    for tt in 0..p {
        if p - tt > b {
            continue;
        }
        for (u, rest, c) in rho_of_t(op.rep.rho(), &op.t, key, &degs, tt, a, b) {
            let mut args = vec![Arg::Vector(&u)];
            args.extend(rest.iter().map(|&i| Arg::Basis(i)));
            axpy(&mut acc, &op.t.eval_args(&args), &-c);
        }
    }
    acc
}

fn v_keys(w: &GradedSpace, g_dim: usize, max_p: usize) -> Vec<MultiIndex> {
    let vd = &w.degrees()[g_dim..];
    (1..=max_p)
        .flat_map(|p| graded_sym_basis(p, vd))
        .map(|k| k.into_iter().map(|i| i + g_dim).collect())
        .collect()
}

/// Outcome of the operator check: verdicts of the direct shuffle sums and of
/// the Maurer–Cartan equation in the derived-bracket algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HrboReport {
    pub report: CheckReport,
    pub p_max: usize,
    pub direct_ok: bool,
    pub mc_ok: bool,
    /// `Σ 1/k! 𝔩_k(T, …, T)` in weights `≤ p_max`.
    pub mc_value: GradedMap,
}

/// Evaluates the defining equations for `p ≤ p_max` directly and through
/// `Σ 1/k! P[..[Δ,T]..,T] = 0`; the two defects must coincide.
pub fn verify_homotopy_rbo(op: &HomotopyRbo, p_max: Option<usize>) -> Result<HrboReport, HomotopyError> {
    let p_max = p_max.unwrap_or_else(|| op.default_p_max());
    let bound = op.certified_bound();
    if p_max > bound {
        return Err(HomotopyError::PMaxTooLarge { requested: p_max, bound });
    }
    let g = op.rep.g_dim();
    let w = op.rep.w_space();
    let keys = v_keys(w, g, p_max);
    let defects = map_indices(Strategy::default(), keys.len(), |i| hrbo_defect(op, &keys[i]));
    let vd = VData { rep: op.rep.clone(), delta: op.rep.delta() };
    let db = vd.derived_brackets(p_max);
    let mc = mc_value(&db, &op.t, op.rep.arity_bound().max(1));
    let mut first = None;
    let mut agree = true;
    for (key, d) in keys.iter().zip(defects) {
        agree &= d == mc.eval_basis(key);
        if first.is_none() && d.iter().any(|x| !x.is_zero()) {
            first = Some(witness(w, key, d));
        }
    }
    let direct_ok = first.is_none();
    let mc_ok = mc.is_zero();
    Ok(HrboReport {
        report: CheckReport {
            check: "homotopy relative Rota-Baxter identity".into(),
            ok: direct_ok && mc_ok,
            routes_agree: agree && direct_ok == mc_ok,
            witness: first,
        },
        p_max,
        direct_ok,
        mc_ok,
        mc_value: mc,
    })
}

fn require_verified(op: &HomotopyRbo) -> Result<(), HomotopyError> {
    let r = verify_homotopy_rbo(op, None)?;
    if r.report.ok {
        Ok(())
    } else {
        Err(HomotopyError::Unverified(r.report.check))
    }
}

/// Largest nonzero arity of the induced brackets on `V`.
fn twist_arity(op: &HomotopyRbo) -> usize {
    let a = op.rep.arity_bound();
    a.saturating_sub(1) * op.weight_bound() + 1
}

/// `𝔩_{t+1}(v_1..v_{t+1}) = Σ_m Σ_{k_1+..+k_m=t} Σ_{S(k_1..k_m,1)} ε/m! ρ_{m+1}(T_{k_1}(..), .., v_σ(t+1))`
/// on `V`, evaluated from the shuffle formula.
pub fn twisted_structure(op: &HomotopyRbo) -> GradedMap {
    let g = op.rep.g_dim();
    let v = op.rep.v_space().clone();
    let w = op.rep.w_space();
    let (a, b) = (op.rep.arity_bound(), op.weight_bound());
    let mut s = GradedMap::zero(v.clone(), Flavor::SymToSelf, 1);
    for n in 1..=twist_arity(op) {
        s = s.add(&GradedMap::from_fn(v.clone(), Flavor::SymToSelf, 1, n, |key| {
            let wk: Vec<usize> = key.iter().map(|&i| i + g).collect();
            let degs: Vec<i32> = wk.iter().map(|&i| w.degree(i)).collect();
            let mut acc = vec![Scalar::zero(); w.dim()];
            for (u, _, c) in rho_of_t(op.rep.rho(), &op.t, &wk, &degs, n - 1, a, b) {
                axpy(&mut acc, &u, &c);
            }
            acc.split_off(g)
        }));
    }
    s
}

/// `(V, 𝔩)` for a verified operator.
pub fn twist_by_t(op: &HomotopyRbo) -> Result<LinftyAlgebra, HomotopyError> {
    require_verified(op)?;
    LinftyAlgebra::new(twisted_structure(op))
}

/// `e^{[·,T]}Δ = Σ_n 1/n! [..[Δ,T]..,T]`, truncated at `max_weight`.
pub fn exp_ad_t(op: &HomotopyRbo, max_weight: usize) -> GradedMap {
    let mut term = op.rep.delta();
    let mut acc = term.clone();
    let mut n = 1usize;
    while !term.is_zero() {
        term = nr_bracket_truncated(&term, &op.t, max_weight).scale(&Scalar::from_integer((n as i64).into()).recip());
        acc = acc.add(&term);
        n += 1;
    }
    acc
}

/// Restriction of `e^{[·,T]}Δ` to inputs and output in `V`.
pub fn twisted_structure_exp(op: &HomotopyRbo) -> GradedMap {
    let g = op.rep.g_dim();
    let e = exp_ad_t(op, twist_arity(op));
    let v_only = e.filter(|k, o| o >= g && k.iter().all(|&i| i >= g));
    v_only.shifted(op.rep.v_space().clone(), Flavor::SymToSelf, -(g as isize))
}

/// `[..[X,T]..,T]` with `i + 1` copies of `T` kills every `X` with `i` inputs
/// from `g` and output in `g`; `i + 2` copies kill those with output in `V`.
/// Checked on every coordinate component of `Δ`.
pub fn nilpotency_guard(op: &HomotopyRbo) -> bool {
    let g = op.rep.g_dim();
    let delta = op.rep.delta();
    let mut classes = std::collections::BTreeSet::new();
    for (k, v) in delta.entries() {
        let i = k.iter().filter(|&&x| x < g).count();
        for (o, x) in v.iter().enumerate() {
            if !x.is_zero() {
                classes.insert((i, o < g, k.len()));
            }
        }
    }
    classes.into_iter().all(|(i, to_g, len)| {
        let mut x = delta.filter(|k, o| {
            k.len() == len && k.iter().filter(|&&y| y < g).count() == i && (o < g) == to_g
        });
        let steps = if to_g { i + 1 } else { i + 2 };
        for _ in 0..steps {
            x = nr_bracket_truncated(&x, &op.t, usize::MAX);
        }
        x.is_zero()
    })
}

/// `Σ_j Σ_{S(j,p−j)} ε T_{p−j+1}(𝔩_j(..), ..) − Σ_n Σ_{S(k_1..k_n)} ε/n! l_n(T_{k_1}(..), ..)`
/// on a tuple of `V`-indices (into `W`); zero for all tuples iff `T` is an
/// L∞-morphism `(V, 𝔩) → (g, l)`.
pub fn morphism_defect(op: &HomotopyRbo, twisted: &GradedMap, key: &[usize]) -> Vec<Scalar> {
    let w = op.rep.w_space();
    let g = op.rep.g_dim();
    let lv = lift(twisted, w, g);
    let degs: Vec<i32> = key.iter().map(|&i| w.degree(i)).collect();
    let p = key.len();
    let mut acc = vec![Scalar::zero(); w.dim()];
    for j in 1..=p {
        for (blocks, sign) in block_shuffles(key, &degs, &[j, p - j]) {
            let u = lv.eval_basis(&blocks[0]);
            if u.iter().all(Zero::is_zero) {
                continue;
            }
            let mut args = vec![Arg::Vector(&u)];
            args.extend(blocks[1].iter().map(|&i| Arg::Basis(i)));
            axpy(&mut acc, &op.t.eval_args(&args), &signed(sign, Scalar::one()));
        }
    }
    let rhs = l_of_t(&op.rep.lifted_l(), &op.t, key, &degs, op.rep.arity_bound(), op.weight_bound());
    axpy(&mut acc, &rhs, &-Scalar::one());
    acc
}

/// Twisting report: the shuffle formula against `e^{[·,T]}Δ|_V`, the
/// generalized Jacobi identity of the result, the morphism property of `T`
/// and the nilpotency guard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    pub structure: LinftyAlgebra,
    pub routes_agree: bool,
    pub jacobi: CheckReport,
    pub morphism: CheckReport,
    pub nilpotent: bool,
}

impl TwistReport {
    pub fn ok(&self) -> bool {
        self.routes_agree && self.jacobi.ok && self.morphism.ok && self.nilpotent
    }
}

pub fn twist_report(op: &HomotopyRbo) -> Result<TwistReport, HomotopyError> {
    let structure = twist_by_t(op)?;
    let routes_agree = twisted_structure_exp(op) == *structure.structure();
    let jacobi = verify_linfty(&structure);
    let g = op.rep.g_dim();
    let w = op.rep.w_space();
    let (a, b) = (op.rep.arity_bound(), op.weight_bound());
    let max_p = (structure.arity_bound() + b).saturating_sub(1).max(a * b).max(1);
    let keys = v_keys(w, g, max_p);
    let defects = map_indices(Strategy::default(), keys.len(), |i| morphism_defect(op, structure.structure(), &keys[i]));
    let first = keys
        .iter()
        .zip(defects)
        .find(|(_, d)| d.iter().any(|x| !x.is_zero()))
        .map(|(k, d)| witness(w, k, d));
    let morphism = CheckReport {
        check: "L-infinity morphism".into(),
        ok: first.is_none(),
        witness: first,
        routes_agree: true,
    };
    Ok(TwistReport { structure, routes_agree, jacobi, morphism, nilpotent: nilpotency_guard(op) })
}

/// Maurer–Cartan test of `(s⁻¹π, T)` in the L∞-algebra on `s⁻¹L' ⊕ h` with
/// `Δ = 0`, for graded `π` and `T` on `W`.
pub fn graded_mc_value(w: Arc<GradedSpace>, g_dim: usize, pi: &GradedMap, t: &GradedMap) -> Shifted<GradedMap> {
    let max_weight = 2 * pi.max_weight().max(1) - 1;
    let alg = bigger_on(w, g_dim, None, max_weight);
    let alpha = Shifted { degree: 0, x: pi.clone(), a: t.clone() };
    mc_value(&alg, &alpha, 4)
}

//! Graded multilinear maps and the graded NR and MN brackets.

use super::space::GradedSpace;
use super::HomotopyError;
use crate::foundation::{graded_sym_basis, koszul_sign, shuffles, sort_koszul, MultiIndex, Scalar};
use crate::linfty::{GradedLie, GradedVector};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Domain type of a graded map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `Hom(Sym(V), V)`.
    SymToSelf,
    /// `Hom(Sym(V) ⊗ V, V)`: the last input is a separate tensor factor.
    SymTensorToSelf,
    /// `Hom(Sym(V), g)` inside `C*(g ⊕ V, g ⊕ V)`; the first `g_dim` basis
    /// vectors span `g`.
    SymToG { g_dim: usize },
}

impl Flavor {
    fn is_tensor(self) -> bool {
        self == Flavor::SymTensorToSelf
    }
}

/// Sum over weights of homogeneous maps of one intrinsic degree. Values are
/// stored on normalized input keys: fully sorted for the symmetric flavors,
/// sorted except for the last slot for `SymTensorToSelf`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    space: Arc<GradedSpace>,
    flavor: Flavor,
    degree: i32,
    terms: BTreeMap<MultiIndex, Vec<Scalar>>,
}

impl PartialEq for GradedMap {
    fn eq(&self, o: &Self) -> bool {
        self.space == o.space
            && self.degree == o.degree
            && self.flavor.is_tensor() == o.flavor.is_tensor()
            && self.terms == o.terms
    }
}

impl Eq for GradedMap {}

/// One argument of a multilinear evaluation.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Basis(usize),
    Vector(&'a [Scalar]),
}

pub(crate) fn normalize_key(flavor: Flavor, degs: &[i32], idx: &[usize]) -> Option<(MultiIndex, i32)> {
    if idx.is_empty() {
        return None;
    }
    if flavor.is_tensor() {
        let (last, head) = idx.split_last()?;
        let (mut s, sign) = sort_koszul(head, degs)?;
        s.push(*last);
        Some((s, sign))
    } else {
        sort_koszul(idx, degs)
    }
}

fn add_into(acc: &mut [Scalar], v: &[Scalar], c: &Scalar) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x * c;
        }
    }
}

impl GradedMap {
    pub fn zero(space: Arc<GradedSpace>, flavor: Flavor, degree: i32) -> Self {
        GradedMap { space, flavor, degree, terms: BTreeMap::new() }
    }

    /// Builds the weight-`k` map whose value on each normalized key is `f(key)`.
    pub fn from_fn(
        space: Arc<GradedSpace>,
        flavor: Flavor,
        degree: i32,
        k: usize,
        f: impl Fn(&[usize]) -> Vec<Scalar>,
    ) -> Self {
        let mut m = Self::zero(space, flavor, degree);
        for key in m.keys(k) {
            let v = f(&key);
            m.insert_normalized(key, v);
        }
        m
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        assert_eq!(self.flavor.is_tensor(), flavor.is_tensor(), "tensor and symmetric flavors do not mix");
        self.flavor = flavor;
        self
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Normalized input keys of weight `k` admitted by the flavor.
    pub fn keys(&self, k: usize) -> Vec<MultiIndex> {
        keys_for(&self.space, self.flavor, k)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &Vec<Scalar>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weights(&self) -> Vec<usize> {
        let w: std::collections::BTreeSet<usize> = self.terms.keys().map(Vec::len).collect();
        w.into_iter().collect()
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn component(&self, k: usize) -> GradedMap {
        self.filter(|key, _| key.len() == k)
    }

    pub fn truncated(&self, max_weight: usize) -> GradedMap {
        self.filter(|key, _| key.len() <= max_weight)
    }

    /// Keeps the coefficients `(key, out)` accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize], usize) -> bool) -> GradedMap {
        let mut out = Self::zero(self.space.clone(), self.flavor, self.degree);
        for (k, v) in &self.terms {
            let w: Vec<Scalar> =
                v.iter().enumerate().map(|(o, x)| if keep(k, o) { x.clone() } else { Scalar::zero() }).collect();
            out.insert_normalized(k.clone(), w);
        }
        out
    }

    fn insert_normalized(&mut self, key: MultiIndex, v: Vec<Scalar>) {
        if v.iter().all(Zero::is_zero) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    fn add_normalized(&mut self, key: MultiIndex, v: &[Scalar], c: &Scalar) {
        let dim = self.dim();
        let e = self.terms.entry(key.clone()).or_insert_with(|| vec![Scalar::zero(); dim]);
        add_into(e, v, c);
        if e.iter().all(Zero::is_zero) {
            self.terms.remove(&key);
        }
    }

    /// Adds `c · e_out` to the value on `inputs` (any order), checking the
    /// flavor support and the degree bookkeeping.
    pub fn add_term(&mut self, inputs: &[usize], out: usize, c: &Scalar) -> Result<(), HomotopyError> {
        if c.is_zero() {
            return Ok(());
        }
        let degs = self.space.degrees();
        if inputs.iter().chain([&out]).any(|&i| i >= degs.len()) {
            return Err(HomotopyError::Support(format!("index out of range in {inputs:?} -> {out}")));
        }
        if let Flavor::SymToG { g_dim } = self.flavor {
            if inputs.iter().any(|&i| i < g_dim) || out >= g_dim {
                return Err(HomotopyError::Support(format!("{inputs:?} -> {out} is not a map from Sym(V) to g")));
            }
        }
        let total: i32 = inputs.iter().map(|&i| degs[i]).sum();
        if degs[out] != total + self.degree {
            return Err(HomotopyError::DegreeBookkeeping { inputs: inputs.to_vec(), output: out });
        }
        let Some((key, sign)) = normalize_key(self.flavor, degs, inputs) else {
            return Err(HomotopyError::Support(format!("odd vector repeated in {inputs:?}")));
        };
        let mut e = vec![Scalar::zero(); self.dim()];
        e[out] = Scalar::one();
        self.add_normalized(key, &e, &(Scalar::from_integer(sign.into()) * c));
        Ok(())
    }

    /// Checks the flavor support and `|f(x)| = Σ|x_i| + degree` on every
    /// stored coefficient.
    pub fn validate(&self) -> Result<(), HomotopyError> {
        let degs = self.space.degrees();
        for (key, v) in &self.terms {
            let total: i32 = key.iter().map(|&i| degs[i]).sum();
            for (o, _) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                if degs[o] != total + self.degree {
                    return Err(HomotopyError::DegreeBookkeeping { inputs: key.clone(), output: o });
                }
                if let Flavor::SymToG { g_dim } = self.flavor {
                    if key.iter().any(|&i| i < g_dim) || o >= g_dim {
                        return Err(HomotopyError::Support(format!("{key:?} -> {o}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Value on basis vectors in any order.
    pub fn eval_basis(&self, idx: &[usize]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        self.accumulate_basis(idx, &Scalar::one(), &mut out);
        out
    }

    fn accumulate_basis(&self, idx: &[usize], c: &Scalar, acc: &mut [Scalar]) {
        let Some((key, sign)) = normalize_key(self.flavor, self.space.degrees(), idx) else { return };
        if let Some(v) = self.terms.get(&key) {
            let c = if sign > 0 { c.clone() } else { -c.clone() };
            add_into(acc, v, &c);
        }
    }

    /// Multilinear evaluation; vector arguments are expanded in the basis.
    pub fn eval_args(&self, args: &[Arg]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        if args.is_empty() || !self.terms.keys().any(|k| k.len() == args.len()) {
            return out;
        }
        let supports: Vec<Vec<(usize, Scalar)>> = args
            .iter()
            .map(|a| match a {
                Arg::Basis(i) => vec![(*i, Scalar::one())],
                Arg::Vector(v) => v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
            })
            .collect();
        let mut idx = Vec::with_capacity(args.len());
        self.expand(&supports, &mut idx, Scalar::one(), &mut out);
        out
    }

    fn expand(&self, sup: &[Vec<(usize, Scalar)>], idx: &mut Vec<usize>, c: Scalar, out: &mut [Scalar]) {
        let d = idx.len();
        if d == sup.len() {
            self.accumulate_basis(idx, &c, out);
            return;
        }
        for (i, x) in &sup[d] {
            idx.push(*i);
            self.expand(sup, idx, &c * x, out);
            idx.pop();
        }
    }

    pub fn eval(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        let a: Vec<Arg> = args.iter().map(|v| Arg::Vector(v)).collect();
        self.eval_args(&a)
    }

    pub fn add(&self, o: &GradedMap) -> GradedMap {
        let mut out = self.clone();
        out.add_scaled_map(o, &Scalar::one());
        out
    }

    pub fn sub(&self, o: &GradedMap) -> GradedMap {
        let mut out = self.clone();
        out.add_scaled_map(o, &-Scalar::one());
        out
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let mut out = Self::zero(self.space.clone(), self.flavor, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v.iter().map(|x| x * c).collect());
        }
        out
    }

    fn add_scaled_map(&mut self, o: &GradedMap, c: &Scalar) {
        assert_eq!(self.flavor.is_tensor(), o.flavor.is_tensor(), "tensor and symmetric flavors do not mix");
        if o.is_zero() {
            return;
        }
        if self.is_zero() {
            self.degree = o.degree;
        }
        if self.flavor != o.flavor && !self.flavor.is_tensor() {
            if self.is_zero() {
                self.flavor = o.flavor;
            } else {
                self.flavor = Flavor::SymToSelf;
            }
        }
        for (k, v) in &o.terms {
            self.add_normalized(k.clone(), v, c);
        }
    }

    /// Transports along the basis shift `i ↦ i + offset` into `target`, whose
    /// basis degrees must match; coefficients falling outside are dropped.
    pub fn shifted(&self, target: Arc<GradedSpace>, flavor: Flavor, offset: isize) -> GradedMap {
        let dim = target.dim() as isize;
        let mv = |i: usize| {
            let j = i as isize + offset;
            (0..dim).contains(&j).then_some(j as usize)
        };
        let mut out = Self::zero(target.clone(), flavor, self.degree);
        for (k, v) in &self.terms {
            let Some(key) = k.iter().map(|&i| mv(i)).collect::<Option<Vec<usize>>>() else { continue };
            let mut w = vec![Scalar::zero(); target.dim()];
            for (o, x) in v.iter().enumerate() {
                if let Some(j) = mv(o) {
                    w[j] = x.clone();
                }
            }
            out.insert_normalized(key, w);
        }
        out
    }

    /// Re-evaluates on permuted inputs of every stored key and compares with
    /// the Koszul-signed value.
    pub fn check_symmetry(&self) -> bool {
        let degs = self.space.degrees();
        for key in self.terms.keys() {
            let free = if self.flavor.is_tensor() { key.len() - 1 } else { key.len() };
            for p in 0..free.saturating_sub(1) {
                let mut sw = key.clone();
                sw.swap(p, p + 1);
                let sign = if degs[key[p]].rem_euclid(2) == 1 && degs[key[p + 1]].rem_euclid(2) == 1 { -1 } else { 1 };
                let lhs = self.eval_basis(&sw);
                let rhs: Vec<Scalar> =
                    self.eval_basis(key).into_iter().map(|x| x * Scalar::from_integer(sign.into())).collect();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn keys_for(space: &GradedSpace, flavor: Flavor, k: usize) -> Vec<MultiIndex> {
    if k == 0 {
        return vec![];
    }
    let degs = space.degrees();
    match flavor {
        Flavor::SymToSelf => graded_sym_basis(k, degs),
        Flavor::SymToG { g_dim } => {
            let vdegs = &degs[g_dim..];
            graded_sym_basis(k, vdegs).into_iter().map(|key| key.into_iter().map(|i| i + g_dim).collect()).collect()
        }
        Flavor::SymTensorToSelf => {
            let heads = graded_sym_basis(k - 1, degs);
            let mut out = Vec::with_capacity(heads.len() * degs.len());
            for h in &heads {
                for last in 0..degs.len() {
                    let mut key = h.clone();
                    key.push(last);
                    out.push(key);
                }
            }
            out
        }
    }
}

impl GradedVector for GradedMap {
    fn degree(&self) -> i32 {
        self.degree
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        self.add_scaled_map(other, c)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn check_pair(op: &'static str, f: &GradedMap, g: &GradedMap, tensor: bool) -> Result<(), HomotopyError> {
    for m in [f, g] {
        if m.flavor.is_tensor() != tensor {
            return Err(HomotopyError::FlavorMismatch { op, found: m.flavor });
        }
    }
    if f.space != g.space {
        return Err(HomotopyError::SpaceMismatch);
    }
    Ok(())
}

fn degrees_of(space: &GradedSpace, key: &[usize]) -> Vec<i32> {
    key.iter().map(|&i| space.degree(i)).collect()
}

/// `f ∘̄ g`: `(f_i ∘̄ g_j)(v_1..v_{i+j−1}) = Σ_{σ∈S(j,i−1)} ε(σ) f_i(g_j(v_σ(1..j)), v_σ(j+1..))`,
/// keeping output weights `≤ max_weight`.
pub(crate) fn nr_compose(f: &GradedMap, g: &GradedMap, max_weight: usize) -> GradedMap {
    let space = f.space.clone();
    let mut out = GradedMap::zero(space.clone(), Flavor::SymToSelf, f.degree + g.degree);
    let mut cache: HashMap<(usize, usize), Vec<crate::foundation::combinat::Shuffle>> = HashMap::new();
    for &i in &f.weights() {
        for &j in &g.weights() {
            let n = i + j - 1;
            if n > max_weight {
                continue;
            }
            let sh = cache.entry((j, i - 1)).or_insert_with(|| shuffles(&[j, i - 1]));
            for key in graded_sym_basis(n, space.degrees()) {
                let kd = degrees_of(&space, &key);
                let mut acc = vec![Scalar::zero(); space.dim()];
                for s in sh.iter() {
                    let inner: Vec<usize> = s.perm[..j].iter().map(|&p| key[p]).collect();
                    let w = g.eval_basis(&inner);
                    if w.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let sign = Scalar::from_integer(koszul_sign(&s.perm, &kd).into());
                    let mut args = vec![0usize];
                    args.extend(s.perm[j..].iter().map(|&p| key[p]));
                    for (c, wc) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        args[0] = c;
                        f.accumulate_basis(&args, &(&sign * wc), &mut acc);
                    }
                }
                out.add_normalized(key, &acc, &Scalar::one());
            }
        }
    }
    out
}

/// `[f,g] = f∘̄g − (−1)^{mn} g∘̄f` on `C*(V,V)`, truncated above `max_weight`.
pub(crate) fn nr_bracket_truncated(f: &GradedMap, g: &GradedMap, max_weight: usize) -> GradedMap {
    let mut out = nr_compose(f, g, max_weight);
    let sign = if (f.degree * g.degree).rem_euclid(2) == 0 { -Scalar::one() } else { Scalar::one() };
    out.add_scaled_map(&nr_compose(g, f, max_weight), &sign);
    out.degree = f.degree + g.degree;
    out
}

pub fn graded_nr_bracket(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, HomotopyError> {
    check_pair("graded NR bracket", f, g, false)?;
    Ok(nr_bracket_truncated(f, g, usize::MAX))
}

/// `(C*(V,V), [,]_NR)` modulo maps of weight above `max_weight` (an ideal,
/// since brackets add weights minus one).
#[derive(Clone, Debug)]
pub struct NrGraded {
    pub space: Arc<GradedSpace>,
    pub max_weight: usize,
}

impl GradedLie for NrGraded {
    type Elem = GradedMap;
    fn zero(&self, degree: i32) -> GradedMap {
        GradedMap::zero(self.space.clone(), Flavor::SymToSelf, degree)
    }
    fn bracket(&self, a: &GradedMap, b: &GradedMap) -> GradedMap {
        nr_bracket_truncated(a, b, self.max_weight)
    }
}

/// `f ⋄ g` on `Hom(Sym(V) ⊗ V, V)`, truncated above `max_weight`.
pub(crate) fn mn_compose(f: &GradedMap, g: &GradedMap, max_weight: usize) -> GradedMap {
    let space = f.space.clone();
    let dim = space.dim();
    let mut out = GradedMap::zero(space.clone(), Flavor::SymTensorToSelf, f.degree + g.degree);
    let n_deg = g.degree as i64;
    for &i in &f.weights() {
        for &j in &g.weights() {
            let n = i + j - 1;
            if n > max_weight {
                continue;
            }
            let first = (i >= 2).then(|| shuffles(&[j - 1, 1, i - 2]));
            let second = shuffles(&[i - 1, j - 1]);
            for key in keys_for(&space, Flavor::SymTensorToSelf, n) {
                let last = key[n - 1];
                let kd = degrees_of(&space, &key[..n - 1]);
                let mut acc = vec![Scalar::zero(); dim];
                if let Some(sh) = &first {
                    for s in sh {
                        let inner: Vec<usize> = s.perm[..j].iter().map(|&p| key[p]).collect();
                        let w = g.eval_basis(&inner);
                        if w.iter().all(Zero::is_zero) {
                            continue;
                        }
                        let sign = Scalar::from_integer(koszul_sign(&s.perm, &kd).into());
                        let mut args = vec![0usize];
                        args.extend(s.perm[j..].iter().map(|&p| key[p]));
                        args.push(last);
                        for (c, wc) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                            args[0] = c;
                            f.accumulate_basis(&args, &(&sign * wc), &mut acc);
                        }
                    }
                }
                for s in &second {
                    let mut inner: Vec<usize> = s.perm[i - 1..].iter().map(|&p| key[p]).collect();
                    inner.push(last);
                    let w = g.eval_basis(&inner);
                    if w.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let head: i64 = s.perm[..i - 1].iter().map(|&p| kd[p] as i64).sum();
                    let mut sign = koszul_sign(&s.perm, &kd);
                    if (n_deg * head).rem_euclid(2) == 1 {
                        sign = -sign;
                    }
                    let sign = Scalar::from_integer(sign.into());
                    let mut args: Vec<usize> = s.perm[..i - 1].iter().map(|&p| key[p]).collect();
                    args.push(0);
                    for (c, wc) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        args[i - 1] = c;
                        f.accumulate_basis(&args, &(&sign * wc), &mut acc);
                    }
                }
                out.add_normalized(key, &acc, &Scalar::one());
            }
        }
    }
    out
}

pub(crate) fn mn_bracket_truncated(f: &GradedMap, g: &GradedMap, max_weight: usize) -> GradedMap {
    let mut out = mn_compose(f, g, max_weight);
    let sign = if (f.degree * g.degree).rem_euclid(2) == 0 { -Scalar::one() } else { Scalar::one() };
    out.add_scaled_map(&mn_compose(g, f, max_weight), &sign);
    out.degree = f.degree + g.degree;
    out
}

/// `[f,g]_MN = f⋄g − (−1)^{mn} g⋄f`.
pub fn graded_mn_bracket(f: &GradedMap, g: &GradedMap) -> Result<GradedMap, HomotopyError> {
    check_pair("graded MN bracket", f, g, true)?;
    Ok(mn_bracket_truncated(f, g, usize::MAX))
}

/// `Φ(f_k)(v_1..v_k) = Σ_{σ∈S(k−1,1)} ε(σ) f_k(v_σ(1), …, v_σ(k))`.
pub fn phi(f: &GradedMap) -> Result<GradedMap, HomotopyError> {
    if !f.flavor.is_tensor() {
        return Err(HomotopyError::FlavorMismatch { op: "phi", found: f.flavor });
    }
    let space = f.space.clone();
    let mut out = GradedMap::zero(space.clone(), Flavor::SymToSelf, f.degree);
    for k in f.weights() {
        let sh = shuffles(&[k - 1, 1]);
        let comp = GradedMap::from_fn(space.clone(), Flavor::SymToSelf, f.degree, k, |key| {
            let kd = degrees_of(&space, key);
            let mut acc = vec![Scalar::zero(); space.dim()];
            for s in &sh {
                let args: Vec<usize> = s.perm.iter().map(|&p| key[p]).collect();
                f.accumulate_basis(&args, &Scalar::from_integer(koszul_sign(&s.perm, &kd).into()), &mut acc);
            }
            acc
        });
        out.add_scaled_map(&comp, &Scalar::one());
    }
    Ok(out)
}

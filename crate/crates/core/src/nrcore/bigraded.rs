use super::{Cochain, Split};
use crate::foundation::combinat::{shuffles, sort_with_sign};
use crate::foundation::Scalar;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    G,
    V,
}

/// Map `∧^a g ⊗ ∧^b V → g` or `→ V`, stored on sorted index tuples of each
/// factor separately (`V` indices are local, `0..dim_v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedMap {
    pub split: Split,
    pub g_arity: usize,
    pub v_arity: usize,
    pub target: Target,
    coeffs: BTreeMap<(Vec<usize>, Vec<usize>, usize), Scalar>,
}

impl BigradedMap {
    pub fn new(split: Split, g_arity: usize, v_arity: usize, target: Target) -> Self {
        BigradedMap { split, g_arity, v_arity, target, coeffs: BTreeMap::new() }
    }

    /// Bidegree `k|l` of the lifted cochain.
    pub fn bidegree(&self) -> (i32, i32) {
        let (a, b) = (self.g_arity as i32, self.v_arity as i32);
        match self.target {
            Target::G => (a - 1, b),
            Target::V => (a, b - 1),
        }
    }

    /// Sets a value on (possibly unsorted) index tuples.
    pub fn set(&mut self, gs: &[usize], vs: &[usize], out: usize, value: Scalar) {
        assert_eq!(gs.len(), self.g_arity);
        assert_eq!(vs.len(), self.v_arity);
        let (Some((g, s1)), Some((v, s2))) = (sort_with_sign(gs), sort_with_sign(vs)) else { return };
        let val = if s1 * s2 > 0 { value } else { -value };
        if val.is_zero() {
            self.coeffs.remove(&(g, v, out));
        } else {
            self.coeffs.insert((g, v, out), val);
        }
    }

    fn value(&self, gs: &[usize], vs: &[usize], out: usize) -> Scalar {
        let (Some((g, s1)), Some((v, s2))) = (sort_with_sign(gs), sort_with_sign(vs)) else {
            return Scalar::zero();
        };
        match self.coeffs.get(&(g, v, out)) {
            Some(x) if s1 * s2 > 0 => x.clone(),
            Some(x) => -x.clone(),
            None => Scalar::zero(),
        }
    }

    fn out_dim(&self) -> usize {
        match self.target {
            Target::G => self.split.dim_g,
            Target::V => self.split.dim_v,
        }
    }

    /// `f(x_1..x_a, v_1..v_b)` on vectors of `g` and `V`.
    pub fn apply(&self, xs: &[Vec<Scalar>], vs: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.out_dim()];
        let args: Vec<&Vec<Scalar>> = xs.iter().chain(vs.iter()).collect();
        let mut idx = Vec::new();
        fn rec(
            f: &BigradedMap,
            args: &[&Vec<Scalar>],
            idx: &mut Vec<usize>,
            coef: Scalar,
            out: &mut [Scalar],
        ) {
            if idx.len() == args.len() {
                let (gs, vs) = idx.split_at(f.g_arity);
                for (o, x) in out.iter_mut().enumerate() {
                    let v = f.value(gs, vs, o);
                    if !v.is_zero() {
                        *x += &coef * v;
                    }
                }
                return;
            }
            let d = idx.len();
            for (i, c) in args[d].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                idx.push(i);
                rec(f, args, idx, &coef * c, out);
                idx.pop();
            }
        }
        rec(self, &args, &mut idx, Scalar::one(), &mut out);
        out
    }

    /// The lift `f̂` evaluated on `(x_i, v_i) ∈ g ⊕ V`:
    /// `Σ_{τ∈S(a,b)} sgn(τ) f(x_τ(1..a), v_τ(a+1..))`, placed in the target
    /// summand.
    pub fn eval_lifted(&self, args: &[(Vec<Scalar>, Vec<Scalar>)]) -> (Vec<Scalar>, Vec<Scalar>) {
        let (a, b) = (self.g_arity, self.v_arity);
        let mut val = vec![Scalar::zero(); self.out_dim()];
        if args.len() == a + b {
            for s in shuffles(&[a, b]) {
                let xs: Vec<Vec<Scalar>> = s.perm[..a].iter().map(|&k| args[k].0.clone()).collect();
                let vs: Vec<Vec<Scalar>> = s.perm[a..].iter().map(|&k| args[k].1.clone()).collect();
                let r = self.apply(&xs, &vs);
                for (o, x) in val.iter_mut().enumerate() {
                    if s.sign > 0 {
                        *x += &r[o];
                    } else {
                        *x -= &r[o];
                    }
                }
            }
        }
        match self.target {
            Target::G => (val, vec![Scalar::zero(); self.split.dim_v]),
            Target::V => (vec![Scalar::zero(); self.split.dim_g], val),
        }
    }

    /// The lift as an element of `C^{a+b−1}(g ⊕ V, g ⊕ V)`.
    pub fn lift(&self) -> Cochain {
        let s = self.split;
        let mut c = Cochain::zero(s, self.g_arity + self.v_arity);
        for ((g, v, out), x) in &self.coeffs {
            let mut idx = g.clone();
            idx.extend(v.iter().map(|&j| s.v(j)));
            let o = match self.target {
                Target::G => *out,
                Target::V => s.v(*out),
            };
            c.set(&idx, o, x.clone());
        }
        c
    }

    /// Reads back the `k|l` component of a cochain with the given target.
    pub fn from_cochain(c: &Cochain, target: Target) -> Option<BigradedMap> {
        let s = c.split();
        let ar = c.arity()?;
        let mut out: Option<BigradedMap> = None;
        for (idx, o, x) in c.nonzero() {
            let t = if s.is_g(o) { Target::G } else { Target::V };
            if t != target {
                continue;
            }
            let gs: Vec<usize> = idx.iter().copied().filter(|&i| s.is_g(i)).collect();
            let vs: Vec<usize> = idx.iter().filter(|&&i| !s.is_g(i)).map(|&i| i - s.dim_g).collect();
            let m = out.get_or_insert_with(|| BigradedMap::new(s, gs.len(), ar - gs.len(), target));
            if m.g_arity != gs.len() {
                return None;
            }
            let local = if s.is_g(o) { o } else { o - s.dim_g };
            m.set(&gs, &vs, local, x);
        }
        out
    }
}

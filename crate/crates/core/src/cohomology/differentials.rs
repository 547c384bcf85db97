//! Coboundary operators of the controlling complexes, each through the NR
//! bracket and through its explicit formula.

use crate::foundation::scalar::{factorial, sign_scalar};
use crate::foundation::Scalar;
use crate::nrcore::{nr_bracket_unchecked as br, Cochain, Split};
use crate::structures::{direct::Tables, LieAlgebra, Rbo, RelativeRbo, Representation};
use num_traits::Zero;

/// `d_CE f = (−1)^{n−1} [μ, f]` for `f ∈ Hom(∧^n g, g)`.
pub fn d_ce(lie: &LieAlgebra, f: &Cochain) -> Cochain {
    let n = f.degree() as i64 + 1;
    br(lie.mu(), f).scale(&sign_scalar(n - 1))
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::from_integer(1.into());
    v
}

fn without(v: &[Vec<Scalar>], skip: &[usize]) -> Vec<Vec<Scalar>> {
    v.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, x)| x.clone()).collect()
}

fn axpy(acc: &mut [Scalar], s: i64, x: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if s > 0 {
            *a += b;
        } else {
            *a -= b;
        }
    }
}

fn alt_sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Vectors of `g ⊕ V` assembled from their parts.
struct W<'a> {
    s: Split,
    tb: &'a Tables<Scalar>,
}

impl W<'_> {
    fn from_g(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut w = x.to_vec();
        w.resize(self.s.total(), Scalar::zero());
        w
    }
    fn from_v(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = vec![Scalar::zero(); self.s.dim_g];
        w.extend_from_slice(v);
        w
    }
    fn g_part(&self, w: &[Scalar]) -> Vec<Scalar> {
        w[..self.s.dim_g].to_vec()
    }
    fn v_part(&self, w: &[Scalar]) -> Vec<Scalar> {
        w[self.s.dim_g..].to_vec()
    }
    fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.tb.bracket(x, y)
    }
    fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.tb.act(x, v)
    }
    fn t(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.tb.apply_t(v)
    }
}

/// Chevalley–Eilenberg differential with adjoint coefficients, explicitly:
/// `Σ_i (−1)^{i+1}[x_i, f(..x̂_i..)] + Σ_{i<j} (−1)^{i+j} f([x_i,x_j], ..)`.
pub fn d_ce_explicit(lie: &LieAlgebra, f: &Cochain) -> Cochain {
    let s = f.split();
    let n = f.arity().unwrap_or(0);
    let tb = lie.tables();
    Cochain::from_fn(s, n + 1, |idx, o| {
        let xs: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(s.dim_g, i)).collect();
        let mut acc = vec![Scalar::zero(); s.dim_g];
        for i in 0..=n {
            let inner = f.eval(&without(&xs, &[i]));
            axpy(&mut acc, alt_sign(i), &tb.bracket(&xs[i], &inner));
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let mut args = vec![tb.bracket(&xs[i], &xs[j])];
                args.extend(without(&xs, &[i, j]));
                axpy(&mut acc, alt_sign(i + j), &f.eval(&args));
            }
        }
        acc[o].clone()
    })
}

/// `∂f = (−1)^{n−1} [π, f]` on `Hom(∧^n g, g) ⊕ Hom(∧^{n−1} g ⊗ V, V)`.
pub fn partial(rep: &Representation, f: &Cochain) -> Cochain {
    let n = f.degree() as i64 + 1;
    br(&rep.pi(), f).scale(&sign_scalar(n - 1))
}

/// `∂` by its explicit formula: the `g`-part is `d_CE`, the `V`-part is
/// `Σ_{i<j} (−1)^{i+j} f_V([x_i,x_j], .., v) + (−1)^{n−1} ρ(f_g(x_1..x_n))v
///  + Σ_i (−1)^{i+1} (ρ(x_i) f_V(..x̂_i.., v) − f_V(..x̂_i.., ρ(x_i)v))`.
pub fn partial_explicit(rep: &Representation, f: &Cochain) -> Cochain {
    let s = f.split();
    let n = f.arity().unwrap_or(0);
    let tb = rep.tables();
    let w = W { s, tb: &tb };
    Cochain::from_fn(s, n + 1, |idx, o| {
        let gcount = idx.iter().filter(|&&i| s.is_g(i)).count();
        let args: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(s.total(), i)).collect();
        if gcount == n + 1 && s.is_g(o) {
            let xs: Vec<Vec<Scalar>> = args.iter().map(|a| w.g_part(a)).collect();
            let mut acc = vec![Scalar::zero(); s.dim_g];
            for i in 0..=n {
                let inner = w.g_part(&f.eval(&without(&args, &[i])));
                axpy(&mut acc, alt_sign(i), &w.br(&xs[i], &inner));
            }
            for i in 0..=n {
                for j in i + 1..=n {
                    let mut a = vec![w.from_g(&w.br(&xs[i], &xs[j]))];
                    a.extend(without(&args, &[i, j]));
                    axpy(&mut acc, alt_sign(i + j), &w.g_part(&f.eval(&a)));
                }
            }
            acc[o].clone()
        } else if gcount == n && !s.is_g(o) {
            // inputs x_1..x_n, v (sorted order puts v last)
            let xs: Vec<Vec<Scalar>> = args[..n].iter().map(|a| w.g_part(a)).collect();
            let v = w.v_part(&args[n]);
            let fv = |gs: Vec<Vec<Scalar>>, v: &[Scalar]| -> Vec<Scalar> {
                let mut a: Vec<Vec<Scalar>> = gs.iter().map(|x| w.from_g(x)).collect();
                a.push(w.from_v(v));
                w.v_part(&f.eval(&a))
            };
            let mut acc = vec![Scalar::zero(); s.dim_v];
            for i in 0..n {
                for j in i + 1..n {
                    let mut gs = vec![w.br(&xs[i], &xs[j])];
                    gs.extend(without(&xs, &[i, j]));
                    axpy(&mut acc, alt_sign(i + j), &fv(gs, &v));
                }
            }
            let fg = w.g_part(&f.eval(&xs.iter().map(|x| w.from_g(x)).collect::<Vec<_>>()));
            axpy(&mut acc, alt_sign(n + 1), &w.act(&fg, &v));
            for i in 0..n {
                let rest = without(&xs, &[i]);
                let a = w.act(&xs[i], &fv(rest.clone(), &v));
                let b = fv(rest, &w.act(&xs[i], &v));
                axpy(&mut acc, alt_sign(i), &a);
                axpy(&mut acc, -alt_sign(i), &b);
            }
            acc[o - s.dim_g].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// `δθ = (−1)^{n−2} [[π, T], θ]` for `θ ∈ Hom(∧^{n−1} V, g)`.
pub fn delta(op: &RelativeRbo, theta: &Cochain) -> Cochain {
    let n = theta.degree() as i64 + 2;
    let pt = br(&op.rep().pi(), &op.t_cochain());
    br(&pt, theta).scale(&sign_scalar(n - 2))
}

/// `δ` explicitly:
/// `(δθ)(v_1..v_n) = Σ_i (−1)^{i+1} [Tv_i, θ(..v̂_i..)]
///   + Σ_i (−1)^{i+1} T ρ(θ(..v̂_i..)) v_i
///   + Σ_{i<j} (−1)^{i+j} θ(ρ(Tv_i)v_j − ρ(Tv_j)v_i, ..v̂_i..v̂_j..)`.
pub fn delta_explicit(op: &RelativeRbo, theta: &Cochain) -> Cochain {
    let s = theta.split();
    let n = theta.arity().unwrap_or(0) + 1;
    let tb = op.tables();
    let w = W { s, tb: &tb };
    Cochain::from_fn(s, n, |idx, o| {
        if !s.is_g(o) || idx.iter().any(|&i| s.is_g(i)) {
            return Scalar::zero();
        }
        let vs: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(s.dim_v, i - s.dim_g)).collect();
        let th = |args: Vec<Vec<Scalar>>| -> Vec<Scalar> {
            w.g_part(&theta.eval(&args.iter().map(|v| w.from_v(v)).collect::<Vec<_>>()))
        };
        let mut acc = vec![Scalar::zero(); s.dim_g];
        for i in 0..n {
            let ti = w.t(&vs[i]);
            let th_i = th(without(&vs, &[i]));
            axpy(&mut acc, alt_sign(i), &w.br(&ti, &th_i));
            axpy(&mut acc, alt_sign(i), &w.t(&w.act(&th_i, &vs[i])));
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = w.act(&w.t(&vs[i]), &vs[j]);
                let b = w.act(&w.t(&vs[j]), &vs[i]);
                let mut args = vec![a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>()];
                args.extend(without(&vs, &[i, j]));
                axpy(&mut acc, alt_sign(i + j), &th(args));
            }
        }
        acc[o].clone()
    })
}

/// `h_T f = (−1)^{n−2} (1/n!) [..[[f, T], T].., T]` with `n` brackets.
pub fn h_t(op: &RelativeRbo, f: &Cochain) -> Cochain {
    let n = f.arity().unwrap_or(0);
    let t = op.t_cochain();
    let mut cur = f.clone();
    for _ in 0..n {
        cur = br(&cur, &t);
    }
    cur.scale(&(sign_scalar(n as i64 - 2) * factorial(n).recip()))
}

/// `h_T` explicitly: `(−1)^n f_g(Tv_1..Tv_n) + Σ_i (−1)^{i+1} T f_V(Tv_1..T̂v_i..Tv_n, v_i)`.
pub fn h_t_explicit(op: &RelativeRbo, f: &Cochain) -> Cochain {
    let s = f.split();
    let n = f.arity().unwrap_or(0);
    let tb = op.tables();
    let w = W { s, tb: &tb };
    Cochain::from_fn(s, n, |idx, o| {
        if !s.is_g(o) || idx.iter().any(|&i| s.is_g(i)) {
            return Scalar::zero();
        }
        let vs: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(s.dim_v, i - s.dim_g)).collect();
        let tvs: Vec<Vec<Scalar>> = vs.iter().map(|v| w.from_g(&w.t(v))).collect();
        let mut acc = vec![Scalar::zero(); s.dim_g];
        axpy(&mut acc, alt_sign(n), &w.g_part(&f.eval(&tvs)));
        for i in 0..n {
            let mut args = without(&tvs, &[i]);
            args.push(w.from_v(&vs[i]));
            let fv = w.v_part(&f.eval(&args));
            axpy(&mut acc, alt_sign(i), &w.t(&fv));
        }
        acc[o].clone()
    })
}

/// `𝒟(f, θ) = (∂f, δθ + h_T f)` on `C^n(g,ρ) ⊕ Hom(∧^{n−1}V, g)`.
/// `theta` is absent in degree 1.
pub fn big_d(op: &RelativeRbo, f: &Cochain, theta: Option<&Cochain>) -> (Cochain, Cochain) {
    let mut second = h_t(op, f);
    if let Some(th) = theta {
        second = second.add(&delta(op, th));
    }
    (partial(op.rep(), f), second)
}

/// Same as [`big_d`] through the explicit formulas.
pub fn big_d_explicit(op: &RelativeRbo, f: &Cochain, theta: Option<&Cochain>) -> (Cochain, Cochain) {
    let mut second = h_t_explicit(op, f);
    if let Some(th) = theta {
        second = second.add(&delta_explicit(op, th));
    }
    (partial_explicit(op.rep(), f), second)
}

/// `(Ωf)(x_1..x_n) = (−1)^n (f(Tx_1..Tx_n) − Σ_i T f(Tx_1..x_i..Tx_n))`.
pub fn omega(rbo: &Rbo, f: &Cochain) -> Cochain {
    let s = f.split();
    let n = f.arity().unwrap_or(0);
    let t = rbo.t();
    Cochain::from_fn(s, n, |idx, o| {
        let xs: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(s.dim_g, i)).collect();
        let txs: Vec<Vec<Scalar>> = xs.iter().map(|x| t.mul_vec(x)).collect();
        let mut acc = f.eval(&txs);
        for i in 0..n {
            let mut args = txs.clone();
            args[i] = xs[i].clone();
            axpy(&mut acc, -1, &t.mul_vec(&f.eval(&args)));
        }
        if n % 2 == 1 {
            -acc[o].clone()
        } else {
            acc[o].clone()
        }
    })
}

/// `δ` for a Rota–Baxter operator on `g` (adjoint coefficients), on
/// `θ ∈ Hom(∧^{n−1} g, g)`.
pub fn delta_rb(rbo: &Rbo, theta: &Cochain) -> Cochain {
    let s = theta.split();
    let n = theta.arity().unwrap_or(0) + 1;
    let tb = rbo.lie().tables();
    let t = rbo.t();
    Cochain::from_fn(s, n, |idx, o| {
        let xs: Vec<Vec<Scalar>> = idx.iter().map(|&i| unit(s.dim_g, i)).collect();
        let mut acc = vec![Scalar::zero(); s.dim_g];
        for i in 0..n {
            let th_i = theta.eval(&without(&xs, &[i]));
            axpy(&mut acc, alt_sign(i), &tb.bracket(&t.mul_vec(&xs[i]), &th_i));
            axpy(&mut acc, alt_sign(i), &t.mul_vec(&tb.bracket(&th_i, &xs[i])));
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = tb.bracket(&t.mul_vec(&xs[i]), &xs[j]);
                let b = tb.bracket(&xs[i], &t.mul_vec(&xs[j]));
                let mut args = vec![a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>()];
                args.extend(without(&xs, &[i, j]));
                axpy(&mut acc, alt_sign(i + j), &theta.eval(&args));
            }
        }
        acc[o].clone()
    })
}

/// `𝒟_RB(f, θ) = (d_CE f, δθ + Ωf)`.
pub fn d_rb(rbo: &Rbo, f: &Cochain, theta: Option<&Cochain>) -> (Cochain, Cochain) {
    let mut second = omega(rbo, f);
    if let Some(th) = theta {
        second = second.add(&delta_rb(rbo, th));
    }
    (d_ce_explicit(rbo.lie(), f), second)
}

/// `𝔦(f, θ) = (f, f, θ)`: embeds a Rota–Baxter cochain into the relative
/// complex over the adjoint representation (`V` a second copy of `g`).
pub fn rb_embed(dim: usize, f: &Cochain, theta: Option<&Cochain>) -> (Cochain, Option<Cochain>) {
    let s = Split::new(dim, dim);
    let n = f.arity().unwrap_or(0);
    let big_f = Cochain::from_fn(s, n, |idx, o| {
        let g: Vec<usize> = idx.iter().copied().filter(|&i| s.is_g(i)).collect();
        if g.len() == n && s.is_g(o) {
            f.get(idx, o)
        } else if g.len() + 1 == n && !s.is_g(o) {
            let mut args = g.clone();
            args.push(idx[n - 1] - dim);
            f.eval_basis(&args)[o - dim].clone()
        } else {
            Scalar::zero()
        }
    });
    let big_theta = theta.map(|th| {
        let m = th.arity().unwrap_or(0);
        Cochain::from_fn(s, m, |idx, o| {
            if s.is_g(o) && idx.iter().all(|&i| !s.is_g(i)) {
                let args: Vec<usize> = idx.iter().map(|&i| i - dim).collect();
                th.eval_basis(&args)[o].clone()
            } else {
                Scalar::zero()
            }
        })
    });
    (big_f, big_theta)
}

/// `𝔭(f_g, f_V, θ) = (f_g, θ)` back to cochains on `g`.
pub fn rb_project(dim: usize, f: &Cochain, theta: &Cochain) -> (Cochain, Cochain) {
    let s = Split::pure(dim);
    let n = f.arity().unwrap_or(0);
    let small_f = Cochain::from_fn(s, n, |idx, o| f.get(idx, o));
    let m = theta.arity().unwrap_or(0);
    let small_t = Cochain::from_fn(s, m, |idx, o| {
        let args: Vec<usize> = idx.iter().map(|&i| i + dim).collect();
        theta.eval_basis(&args)[o].clone()
    });
    (small_f, small_t)
}

/// `𝒟_RB = 𝔭 ∘ 𝒟 ∘ 𝔦`.
pub fn d_rb_via_relative(rbo: &Rbo, f: &Cochain, theta: Option<&Cochain>) -> (Cochain, Cochain) {
    let dim = rbo.lie().dim();
    let (bf, bt) = rb_embed(dim, f, theta);
    let rel = rbo.as_relative();
    let (df, dt) = big_d(&rel, &bf, bt.as_ref());
    rb_project(dim, &df, &dt)
}

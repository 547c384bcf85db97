//! Defining identities evaluated directly from structure constants, over any
//! commutative coefficient ring. Independent of the NR machinery; also used
//! with dual numbers for first-order deformations.

use crate::foundation::Scalar;
use num_traits::Zero;
use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Structure constants of `(g, [,], ρ, T)`:
/// `[e_i, e_j] = Σ_k mu[i][j][k] e_k`, `ρ(e_i) v_a = Σ_b rho[i][b][a] v_b`,
/// `T v_a = Σ_i t[i][a] e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tables<R> {
    pub dg: usize,
    pub dv: usize,
    pub mu: Vec<R>,
    pub rho: Vec<R>,
    pub t: Vec<R>,
}

fn unit<R: Ring>(n: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); n];
    v[i] = R::from_scalar(&Scalar::from_integer(1.into()));
    v
}

fn axpy<R: Ring>(acc: &mut [R], c: &R, x: &[R]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = a.add(&c.mul(b));
    }
}

fn sub_vec<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn add_vec<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

impl<R: Ring> Tables<R> {
    pub fn mu_at(&self, i: usize, j: usize, k: usize) -> &R {
        &self.mu[(i * self.dg + j) * self.dg + k]
    }

    pub fn rho_at(&self, i: usize, b: usize, a: usize) -> &R {
        &self.rho[(i * self.dv + b) * self.dv + a]
    }

    pub fn t_at(&self, i: usize, a: usize) -> &R {
        &self.t[i * self.dv + a]
    }

    pub fn bracket(&self, x: &[R], y: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.dg];
        for i in 0..self.dg {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dg {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].mul(&y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.add(&c.mul(self.mu_at(i, j, k)));
                }
            }
        }
        out
    }

    pub fn act(&self, x: &[R], v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.dv];
        for i in 0..self.dg {
            if x[i].is_zero() {
                continue;
            }
            for a in 0..self.dv {
                if v[a].is_zero() {
                    continue;
                }
                let c = x[i].mul(&v[a]);
                for (b, o) in out.iter_mut().enumerate() {
                    *o = o.add(&c.mul(self.rho_at(i, b, a)));
                }
            }
        }
        out
    }

    pub fn apply_t(&self, v: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.dg];
        for a in 0..self.dv {
            if v[a].is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = o.add(&v[a].mul(self.t_at(i, a)));
            }
        }
        out
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis vectors.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vec<R> {
        let (x, y, z) = (unit(self.dg, i), unit(self.dg, j), unit(self.dg, k));
        let a = self.bracket(&self.bracket(&x, &y), &z);
        let b = self.bracket(&self.bracket(&y, &z), &x);
        let c = self.bracket(&self.bracket(&z, &x), &y);
        add_vec(&add_vec(&a, &b), &c)
    }

    /// `[x,y] + [y,x]`.
    pub fn antisymmetry_defect(&self, i: usize, j: usize) -> Vec<R> {
        let (x, y) = (unit(self.dg, i), unit(self.dg, j));
        add_vec(&self.bracket(&x, &y), &self.bracket(&y, &x))
    }

    /// `ρ([x,y])v − ρ(x)ρ(y)v + ρ(y)ρ(x)v`.
    pub fn rep_defect(&self, i: usize, j: usize, a: usize) -> Vec<R> {
        let (x, y, v) = (unit(self.dg, i), unit(self.dg, j), unit(self.dv, a));
        let lhs = self.act(&self.bracket(&x, &y), &v);
        let xy = self.act(&x, &self.act(&y, &v));
        let yx = self.act(&y, &self.act(&x, &v));
        sub_vec(&lhs, &sub_vec(&xy, &yx))
    }

    /// `[Tu,Tv] − T(ρ(Tu)v − ρ(Tv)u)`.
    pub fn rbo_defect(&self, a: usize, b: usize) -> Vec<R> {
        let (u, v) = (unit(self.dv, a), unit(self.dv, b));
        let (tu, tv) = (self.apply_t(&u), self.apply_t(&v));
        let lhs = self.bracket(&tu, &tv);
        let inner = sub_vec(&self.act(&tu, &v), &self.act(&tv, &u));
        sub_vec(&lhs, &self.apply_t(&inner))
    }

    pub fn first_jacobi_failure(&self) -> Option<(Vec<usize>, Vec<R>)> {
        for i in 0..self.dg {
            for j in 0..self.dg {
                let d = self.antisymmetry_defect(i, j);
                if d.iter().any(|x| !x.is_zero()) {
                    return Some((vec![i, j], d));
                }
            }
        }
        for i in 0..self.dg {
            for j in i + 1..self.dg {
                for k in j + 1..self.dg {
                    let d = self.jacobi_defect(i, j, k);
                    if d.iter().any(|x| !x.is_zero()) {
                        return Some((vec![i, j, k], d));
                    }
                }
            }
        }
        None
    }

    pub fn first_rep_failure(&self) -> Option<(usize, usize, usize, Vec<R>)> {
        for i in 0..self.dg {
            for j in i + 1..self.dg {
                for a in 0..self.dv {
                    let d = self.rep_defect(i, j, a);
                    if d.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, a, d));
                    }
                }
            }
        }
        None
    }

    pub fn first_rbo_failure(&self) -> Option<(usize, usize, Vec<R>)> {
        for a in 0..self.dv {
            for b in a + 1..self.dv {
                let d = self.rbo_defect(a, b);
                if d.iter().any(|x| !x.is_zero()) {
                    return Some((a, b, d));
                }
            }
        }
        None
    }

    /// Rota–Baxter identity of weight zero for `T: g → g` stored in `t`
    /// (requires `dv == dg`): `[Tx,Ty] − T([Tx,y] + [x,Ty])`.
    pub fn rb_defect(&self, a: usize, b: usize) -> Vec<R> {
        let (x, y) = (unit(self.dg, a), unit(self.dg, b));
        let (tx, ty) = (self.apply_t(&x), self.apply_t(&y));
        let lhs = self.bracket(&tx, &ty);
        let inner = add_vec(&self.bracket(&tx, &y), &self.bracket(&x, &ty));
        sub_vec(&lhs, &self.apply_t(&inner))
    }

    /// Adds `c · other` entrywise (tables of the same shape).
    pub fn axpy_tables(&mut self, c: &R, other: &Tables<R>) {
        axpy(&mut self.mu, c, &other.mu);
        axpy(&mut self.rho, c, &other.rho);
        axpy(&mut self.t, c, &other.t);
    }
}

//! Generic L∞ machinery shared by the classical and graded layers: the
//! derived-bracket algebra on `s⁻¹L ⊕ h` built from V-data, twisting by a
//! Maurer–Cartan element, and evaluation of the generalized Jacobi and
//! Maurer–Cartan expressions.
//!
//! Brackets have degree 1 and are graded symmetric.

use crate::foundation::combinat::{koszul_sign, shuffles};
use crate::foundation::scalar::{factorial, sign_scalar};
use crate::foundation::Scalar;
use num_traits::One;

/// A homogeneous element of a graded vector space.
pub trait GradedVector: Clone + Send + Sync {
    fn degree(&self) -> i32;
    fn add_scaled(&mut self, other: &Self, c: &Scalar);
    fn is_zero(&self) -> bool;
}

/// Graded Lie algebra with homogeneous elements.
pub trait GradedLie: Sync {
    type Elem: GradedVector;
    fn zero(&self, degree: i32) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// L∞-algebra: `bracket(args)` is `l_k` with `k = args.len()`.
pub trait Linfty: Sync {
    type Elem: GradedVector;
    fn zero(&self, degree: i32) -> Self::Elem;
    fn bracket(&self, args: &[&Self::Elem]) -> Self::Elem;
}

/// `Σ_{i} Σ_{σ∈S(i,n−i)} ε(σ) l_{n−i+1}(l_i(x_σ(1..i)), x_σ(i+1..n))`.
pub fn jacobi_defect<L: Linfty>(alg: &L, xs: &[L::Elem]) -> L::Elem {
    let n = xs.len();
    let degs: Vec<i32> = xs.iter().map(|x| x.degree()).collect();
    let mut acc = alg.zero(degs.iter().sum::<i32>() + 2);
    for i in 1..=n {
        for s in shuffles(&[i, n - i]) {
            let inner: Vec<&L::Elem> = s.perm[..i].iter().map(|&k| &xs[k]).collect();
            let li = alg.bracket(&inner);
            if li.is_zero() {
                continue;
            }
            let mut outer: Vec<&L::Elem> = vec![&li];
            outer.extend(s.perm[i..].iter().map(|&k| &xs[k]));
            let term = alg.bracket(&outer);
            acc.add_scaled(&term, &Scalar::from_integer(koszul_sign(&s.perm, &degs).into()));
        }
    }
    acc
}

/// `Σ_{k=1}^{max_k} (1/k!) l_k(α, ..., α)`.
pub fn mc_value<L: Linfty>(alg: &L, alpha: &L::Elem, max_k: usize) -> L::Elem {
    let mut acc = alg.zero(alpha.degree() * 2 + 1 - alpha.degree());
    for k in 1..=max_k {
        let args: Vec<&L::Elem> = vec![alpha; k];
        let t = alg.bracket(&args);
        acc.add_scaled(&t, &factorial(k).recip());
    }
    acc
}

/// `l_k^α(x_1..x_k) = Σ_n (1/n!) l_{k+n}(α^n, x_1..x_k)` for a degree-0 `α`,
/// truncated at `max_extra` copies of `α`.
pub struct Twisted<'a, L: Linfty> {
    pub base: &'a L,
    pub alpha: L::Elem,
    pub max_extra: usize,
}

impl<L: Linfty> Linfty for Twisted<'_, L> {
    type Elem = L::Elem;
    fn zero(&self, degree: i32) -> Self::Elem {
        self.base.zero(degree)
    }
    fn bracket(&self, args: &[&Self::Elem]) -> Self::Elem {
        let deg: i32 = args.iter().map(|a| a.degree()).sum::<i32>() + 1;
        let mut acc = self.base.zero(deg);
        for n in 0..=self.max_extra {
            let mut full: Vec<&Self::Elem> = vec![&self.alpha; n];
            full.extend_from_slice(args);
            if full.is_empty() {
                continue;
            }
            let t = self.base.bracket(&full);
            acc.add_scaled(&t, &factorial(n).recip());
        }
        acc
    }
}

/// Element `(s⁻¹x, a)` of `s⁻¹L ⊕ h` of the given degree: `x` has degree
/// `degree + 1` in `L`, `a` has degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shifted<E> {
    pub degree: i32,
    pub x: E,
    pub a: E,
}

impl<E: GradedVector> GradedVector for Shifted<E> {
    fn degree(&self) -> i32 {
        self.degree
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        self.x.add_scaled(&other.x, c);
        self.a.add_scaled(&other.a, c);
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.a.is_zero()
    }
}

/// V-data `(L, h, P, Δ)` and the L∞-algebra it induces on `s⁻¹L' ⊕ h`:
///
/// * `l_1(s⁻¹x, a) = (−s⁻¹[Δ,x], P(x + [Δ,a]))`
/// * `l_2(s⁻¹x, s⁻¹y) = (−1)^{|x|} s⁻¹[x,y]`
/// * `l_k(s⁻¹x, a_1..a_{k−1}) = P[..[x,a_1]..,a_{k−1}]`
/// * `l_k(a_1..a_k) = P[..[Δ,a_1]..,a_k]`
///
/// and all other brackets of generators vanish.
pub struct BiggerLinfty<A: GradedLie> {
    pub alg: A,
    pub project: Box<dyn Fn(&A::Elem) -> A::Elem + Send + Sync>,
    pub delta: Option<A::Elem>,
}

impl<A: GradedLie> BiggerLinfty<A> {
    fn nested(&self, head: &A::Elem, tail: &[&A::Elem]) -> A::Elem {
        let mut cur = head.clone();
        for t in tail {
            if cur.is_zero() {
                break;
            }
            cur = self.alg.bracket(&cur, t);
        }
        cur
    }

    pub fn pair(&self, x: A::Elem, a: A::Elem) -> Shifted<A::Elem> {
        Shifted { degree: a.degree(), x, a }
    }
}

impl<A: GradedLie> Linfty for BiggerLinfty<A> {
    type Elem = Shifted<A::Elem>;

    fn zero(&self, degree: i32) -> Self::Elem {
        Shifted { degree, x: self.alg.zero(degree + 1), a: self.alg.zero(degree) }
    }

    fn bracket(&self, args: &[&Self::Elem]) -> Self::Elem {
        let k = args.len();
        let deg: i32 = args.iter().map(|a| a.degree).sum::<i32>() + 1;
        let mut out = self.zero(deg);
        if k == 0 {
            return out;
        }
        let p = &self.project;
        if k == 1 {
            let e = args[0];
            if let Some(d) = &self.delta {
                out.x.add_scaled(&self.alg.bracket(d, &e.x), &-Scalar::one());
                out.a.add_scaled(&p(&self.alg.bracket(d, &e.a)), &Scalar::one());
            }
            out.a.add_scaled(&p(&e.x), &Scalar::one());
            return out;
        }
        if k == 2 {
            let sx = sign_scalar((args[0].degree + 1) as i64);
            out.x.add_scaled(&self.alg.bracket(&args[0].x, &args[1].x), &sx);
        }
        // one shifted slot, moved to the front with its Koszul sign
        for i in 0..k {
            if args[i].x.is_zero() {
                continue;
            }
            let before: i64 = args[..i].iter().map(|a| a.degree as i64).sum();
            let sign = sign_scalar(args[i].degree as i64 * before);
            let tail: Vec<&A::Elem> =
                args.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| &a.a).collect();
            let v = self.nested(&args[i].x, &tail);
            if !v.is_zero() {
                out.a.add_scaled(&p(&v), &sign);
            }
        }
        if let Some(d) = &self.delta {
            let tail: Vec<&A::Elem> = args.iter().map(|a| &a.a).collect();
            let v = self.nested(d, &tail);
            if !v.is_zero() {
                out.a.add_scaled(&p(&v), &Scalar::one());
            }
        }
        out
    }
}

/// Derived brackets `l_k(a_1..a_k) = P[..[Δ,a_1]..,a_k]` on `h` alone.
pub struct DerivedBrackets<A: GradedLie> {
    pub alg: A,
    pub project: Box<dyn Fn(&A::Elem) -> A::Elem + Send + Sync>,
    pub delta: A::Elem,
}

impl<A: GradedLie> Linfty for DerivedBrackets<A> {
    type Elem = A::Elem;
    fn zero(&self, degree: i32) -> Self::Elem {
        self.alg.zero(degree)
    }
    fn bracket(&self, args: &[&Self::Elem]) -> Self::Elem {
        let mut cur = self.delta.clone();
        for a in args {
            if cur.is_zero() {
                break;
            }
            cur = self.alg.bracket(&cur, a);
        }
        let deg: i32 = args.iter().map(|a| a.degree()).sum::<i32>() + 1;
        if cur.is_zero() {
            return self.alg.zero(deg);
        }
        (self.project)(&cur)
    }
}

use crate::foundation::combinat::{binomial, exterior_basis, exterior_rank, sort_with_sign};
use crate::foundation::{Matrix, Scalar};
use num_traits::{One, Zero};

/// Decomposition `W = g ⊕ V`: basis indices `0..dim_g` span `g`, the rest `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Split {
    pub dim_g: usize,
    pub dim_v: usize,
}

impl Split {
    pub fn new(dim_g: usize, dim_v: usize) -> Self {
        Split { dim_g, dim_v }
    }

    /// Split for a single space (no `V` part).
    pub fn pure(dim: usize) -> Self {
        Split { dim_g: dim, dim_v: 0 }
    }

    pub fn total(&self) -> usize {
        self.dim_g + self.dim_v
    }

    pub fn is_g(&self, i: usize) -> bool {
        i < self.dim_g
    }

    /// Index of the `a`-th basis vector of `V` inside `W`.
    pub fn v(&self, a: usize) -> usize {
        self.dim_g + a
    }

    /// Bidegree `k|l` of a single coefficient slot.
    pub fn slot_bidegree(&self, inputs: &[usize], out: usize) -> (i32, i32) {
        let a = inputs.iter().filter(|&&i| self.is_g(i)).count() as i32;
        let b = inputs.len() as i32 - a;
        if self.is_g(out) {
            (a - 1, b)
        } else {
            (a, b - 1)
        }
    }
}

/// Element of `C^n(W, W) = Hom(∧^{n+1} W, W)`, stored densely on strictly
/// increasing input tuples. `n` is the NR degree; the arity is `n + 1`.
/// Negative arity gives the zero space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    split: Split,
    degree: i32,
    coeffs: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(split: Split, arity: usize) -> Self {
        Self::zero_of_degree(split, arity as i32 - 1)
    }

    pub fn zero_of_degree(split: Split, degree: i32) -> Self {
        let n = split.total();
        let len = if degree + 1 < 0 { 0 } else { binomial(n, (degree + 1) as usize) * n };
        Cochain { split, degree, coeffs: vec![Scalar::zero(); len] }
    }

    /// Builds a cochain from its values on sorted basis tuples.
    pub fn from_fn(split: Split, arity: usize, mut f: impl FnMut(&[usize], usize) -> Scalar) -> Self {
        let mut c = Self::zero(split, arity);
        let n = split.total();
        for (r, idx) in exterior_basis(arity, n).iter().enumerate() {
            for out in 0..n {
                c.coeffs[r * n + out] = f(idx, out);
            }
        }
        c
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Number of inputs; `None` for the zero space of negative arity.
    pub fn arity(&self) -> Option<usize> {
        (self.degree + 1 >= 0).then_some((self.degree + 1) as usize)
    }

    fn dim(&self) -> usize {
        self.split.total()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient on a sorted input tuple.
    pub fn get(&self, sorted_inputs: &[usize], out: usize) -> Scalar {
        let n = self.dim();
        self.coeffs[exterior_rank(sorted_inputs, n) * n + out].clone()
    }

    pub(crate) fn row(&self, rank: usize) -> &[Scalar] {
        let n = self.dim();
        &self.coeffs[rank * n..(rank + 1) * n]
    }

    /// Sets `f(e_{inputs}) ↦ value · e_out`, honouring antisymmetry for
    /// unsorted inputs. Repeated inputs are ignored.
    pub fn set(&mut self, inputs: &[usize], out: usize, value: Scalar) {
        let Some((sorted, sign)) = sort_with_sign(inputs) else { return };
        let n = self.dim();
        let r = exterior_rank(&sorted, n);
        self.coeffs[r * n + out] = if sign > 0 { value } else { -value };
    }

    /// Adds `value` on the (possibly unsorted) slot.
    pub fn add_at(&mut self, inputs: &[usize], out: usize, value: &Scalar) {
        let Some((sorted, sign)) = sort_with_sign(inputs) else { return };
        let n = self.dim();
        let r = exterior_rank(&sorted, n);
        if sign > 0 {
            self.coeffs[r * n + out] += value;
        } else {
            self.coeffs[r * n + out] -= value;
        }
    }

    /// Value on basis vectors in the given (any) order.
    pub fn eval_basis(&self, inputs: &[usize]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        self.accumulate_basis(inputs, &Scalar::one(), &mut out);
        out
    }

    /// `acc += c · f(e_{inputs})`.
    pub fn accumulate_basis(&self, inputs: &[usize], c: &Scalar, acc: &mut [Scalar]) {
        if Some(inputs.len()) != self.arity() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(inputs) else { return };
        let n = self.dim();
        let r = exterior_rank(&sorted, n);
        for (o, x) in self.coeffs[r * n..(r + 1) * n].iter().enumerate() {
            if !x.is_zero() {
                if sign > 0 {
                    acc[o] += c * x;
                } else {
                    acc[o] -= c * x;
                }
            }
        }
    }

    /// Multilinear evaluation on arbitrary vectors of `W`.
    pub fn eval(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        if Some(args.len()) != self.arity() {
            return out;
        }
        let supports: Vec<Vec<usize>> =
            args.iter().map(|a| (0..n).filter(|&i| !a[i].is_zero()).collect()).collect();
        let mut idx = Vec::with_capacity(args.len());
        fn rec(
            f: &Cochain,
            args: &[Vec<Scalar>],
            supports: &[Vec<usize>],
            idx: &mut Vec<usize>,
            coef: Scalar,
            out: &mut [Scalar],
        ) {
            let d = idx.len();
            if d == args.len() {
                f.accumulate_basis(idx, &coef, out);
                return;
            }
            for &i in &supports[d] {
                if idx.contains(&i) {
                    continue;
                }
                idx.push(i);
                rec(f, args, supports, idx, &coef * &args[d][i], out);
                idx.pop();
            }
        }
        rec(self, args, &supports, &mut idx, Scalar::one(), &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    /// Iterates over nonzero slots as `(sorted inputs, output, value)`.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let n = self.dim();
        let Some(a) = self.arity() else { return Vec::new() };
        let mut out = Vec::new();
        for (r, idx) in exterior_basis(a, n).into_iter().enumerate() {
            for o in 0..n {
                let x = &self.coeffs[r * n + o];
                if !x.is_zero() {
                    out.push((idx.clone(), o, x.clone()));
                }
            }
        }
        out
    }

    fn check_same(&self, other: &Cochain) {
        assert_eq!(self.split, other.split, "split mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cochain { split: self.split, degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.check_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Cochain { split: self.split, degree: self.degree, coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Cochain { split: self.split, degree: self.degree, coeffs }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Scalar) {
        self.check_same(other);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// Keeps only the slots accepted by `keep(inputs, out)`.
    pub fn filter(&self, mut keep: impl FnMut(&[usize], usize) -> bool) -> Cochain {
        let mut c = self.clone();
        let n = self.dim();
        if let Some(a) = self.arity() {
            for (r, idx) in exterior_basis(a, n).iter().enumerate() {
                for o in 0..n {
                    if !keep(idx, o) {
                        c.coeffs[r * n + o] = Scalar::zero();
                    }
                }
            }
        }
        c
    }

    /// Homogeneous component of bidegree `k|l`.
    pub fn component(&self, k: i32, l: i32) -> Cochain {
        let s = self.split;
        self.filter(|idx, o| s.slot_bidegree(idx, o) == (k, l))
    }

    /// Bidegrees of all nonzero homogeneous components, sorted.
    pub fn bidegrees(&self) -> Vec<(i32, i32)> {
        let mut v: Vec<(i32, i32)> =
            self.nonzero().iter().map(|(idx, o, _)| self.split.slot_bidegree(idx, *o)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The bidegree if the cochain is nonzero and homogeneous.
    pub fn bidegree(&self) -> Option<(i32, i32)> {
        let b = self.bidegrees();
        (b.len() == 1).then(|| b[0])
    }

    /// Whether every nonzero slot has bidegree `k|l`.
    pub fn has_bidegree(&self, k: i32, l: i32) -> bool {
        self.bidegrees().iter().all(|&b| b == (k, l))
    }

    /// Change of basis: `f'(x_1, ...) = A⁻¹ f(A x_1, ...)`, where `A` is the
    /// matrix whose columns are the new basis vectors in old coordinates.
    pub fn conjugate(&self, a: &Matrix, a_inv: &Matrix) -> Cochain {
        let n = self.dim();
        let Some(ar) = self.arity() else { return self.clone() };
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| a.column(j)).collect();
        Cochain::from_fn(self.split, ar, |idx, o| {
            let args: Vec<Vec<Scalar>> = idx.iter().map(|&i| cols[i].clone()).collect();
            let val = self.eval(&args);
            a_inv.mul_vec(&val)[o].clone()
        })
    }

    /// Re-embeds into a bigger split through an index map on basis vectors.
    pub fn reindex(&self, target: Split, map: impl Fn(usize) -> usize) -> Cochain {
        let mut c = Cochain::zero_of_degree(target, self.degree);
        for (idx, o, x) in self.nonzero() {
            let new: Vec<usize> = idx.iter().map(|&i| map(i)).collect();
            c.add_at(&new, map(o), &x);
        }
        c
    }
}

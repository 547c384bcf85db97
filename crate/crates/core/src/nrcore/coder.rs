//! Second route to the NR bracket: extend cochains to coderivations of the
//! exterior coalgebra `∧^c W`, compose them as matrices, and corestrict.

use super::Cochain;
use crate::foundation::combinat::{binomial, exterior_basis, exterior_rank, shuffles, sort_with_sign};
use crate::foundation::scalar::sign_scalar;
use crate::foundation::{Matrix, Scalar};
use num_traits::Zero;

/// Matrix of the coderivation `D_Q: ∧^m W → ∧^{m−q} W` extending `Q`
/// (arity `q+1`), in lexicographic exterior bases.
pub fn coderivation_matrix(q: &Cochain, m: usize) -> Matrix {
    let n = q.split().total();
    let Some(qa) = q.arity() else { return Matrix::zeros(0, binomial(n, m)) };
    if qa == 0 || m < qa {
        let rows = if qa == 0 { binomial(n, m + 1) } else { 0 };
        return Matrix::zeros(rows, binomial(n, m));
    }
    let target = m + 1 - qa;
    let mut d = Matrix::zeros(binomial(n, target), binomial(n, m));
    let shuf = shuffles(&[qa, m - qa]);
    for (c, idx) in exterior_basis(m, n).iter().enumerate() {
        let mut col = vec![Scalar::zero(); binomial(n, target)];
        for s in &shuf {
            let inner: Vec<usize> = s.perm[..qa].iter().map(|&k| idx[k]).collect();
            let rest: Vec<usize> = s.perm[qa..].iter().map(|&k| idx[k]).collect();
            let val = q.eval_basis(&inner);
            for (j, x) in val.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut mono = vec![j];
                mono.extend_from_slice(&rest);
                if let Some((sorted, sign)) = sort_with_sign(&mono) {
                    let r = exterior_rank(&sorted, n);
                    if sign * s.sign > 0 {
                        col[r] += x;
                    } else {
                        col[r] -= x;
                    }
                }
            }
        }
        for (r, x) in col.into_iter().enumerate() {
            d.set(r, c, x);
        }
    }
    d
}

fn as_corestriction(p: &Cochain) -> Matrix {
    let n = p.split().total();
    let pa = p.arity().unwrap_or(0);
    let basis = exterior_basis(pa, n);
    let mut m = Matrix::zeros(n, basis.len());
    for (c, idx) in basis.iter().enumerate() {
        for (o, x) in p.eval_basis(idx).into_iter().enumerate() {
            m.set(o, c, x);
        }
    }
    m
}

fn from_corestriction(split: crate::nrcore::Split, degree: i32, m: &Matrix) -> Cochain {
    let n = split.total();
    let arity = (degree + 1) as usize;
    Cochain::from_fn(split, arity, |idx, o| m.get(o, exterior_rank(idx, n)))
}

/// `P ∘̄ Q = pr ∘ D_P ∘ D_Q` restricted to `∧^{p+q+1} W`.
pub fn compose_via_coderivations(p: &Cochain, q: &Cochain) -> Cochain {
    let split = p.split();
    let deg = p.degree() + q.degree();
    let (Some(pa), Some(qa)) = (p.arity(), q.arity()) else {
        return Cochain::zero_of_degree(split, deg);
    };
    if pa == 0 || pa + qa < 1 || pa + qa - 1 > split.total() {
        return Cochain::zero_of_degree(split, deg);
    }
    let m = pa + qa - 1;
    let prod = as_corestriction(p).mul(&coderivation_matrix(q, m));
    from_corestriction(split, deg, &prod)
}

/// NR bracket computed through coderivation composition.
pub fn nr_bracket_via_coderivations(p: &Cochain, q: &Cochain) -> Cochain {
    let mut r = compose_via_coderivations(p, q);
    let s = sign_scalar((p.degree() as i64) * (q.degree() as i64));
    r.add_scaled(&compose_via_coderivations(q, p), &-s);
    r
}

/// Checks `D_{[P,Q]} = D_P D_Q − (−1)^{pq} D_Q D_P` on `∧^m W`.
pub fn commutator_matches_on(p: &Cochain, q: &Cochain, m: usize) -> bool {
    let (Some(pa), Some(qa)) = (p.arity(), q.arity()) else { return true };
    if pa == 0 || qa == 0 || m + 1 < pa + qa || m > p.split().total() {
        return true;
    }
    let br = super::nr_bracket_unchecked(p, q);
    let lhs = coderivation_matrix(&br, m);
    let dp_dq = coderivation_matrix(p, m + 1 - qa).mul(&coderivation_matrix(q, m));
    let dq_dp = coderivation_matrix(q, m + 1 - pa).mul(&coderivation_matrix(p, m));
    let s = sign_scalar((p.degree() as i64) * (q.degree() as i64));
    lhs == dp_dq.add(&dq_dp.scale(&-s))
}

//! `r♯`, `Ψ`, `♭`, `f⋆` and `Θ`. Covectors of `g*` occupy the `V` half of
//! the split `g ⊕ g*`; `e*_a` has index `dim g + a`.

use super::polyvector::Polyvector;
use crate::foundation::{exterior_basis, Matrix, Scalar};
use crate::nrcore::{Cochain, Split};
use num_traits::Zero;

/// `⟨r♯ξ, η⟩ = ⟨r, ξ∧η⟩`; column `a` is `r♯(e*_a)`.
pub fn r_sharp(r: &Polyvector) -> Matrix {
    let d = r.dim();
    let mut m = Matrix::zeros(d, d);
    for a in 0..d {
        for i in 0..d {
            m.set(i, a, r.get(&[a, i]));
        }
    }
    m
}

/// `⟨Ψ(χ)(ξ_1..ξ_k), ξ_{k+1}⟩ = ⟨χ, ξ_1∧…∧ξ_{k+1}⟩`, as a cochain on
/// `g ⊕ g*` with `g*` inputs and `g` output.
pub fn psi(chi: &Polyvector) -> Cochain {
    let d = chi.dim();
    let s = Split::new(d, d);
    let k = chi.degree().saturating_sub(1);
    Cochain::from_fn(s, k, |idx, o| {
        if !s.is_g(o) || idx.iter().any(|&i| s.is_g(i)) {
            return Scalar::zero();
        }
        let mut j: Vec<usize> = idx.iter().map(|&i| i - d).collect();
        j.push(o);
        chi.get(&j)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlatError {
    #[error("map is not of type Hom(∧g*, g): nonzero value {value} at {inputs:?} -> {out}")]
    WrongType { inputs: Vec<usize>, out: usize, value: Scalar },
    #[error("map is not skew in all arguments: at {inputs:?} -> {out} value {value}, skew extension gives {expected}")]
    NotSkew { inputs: Vec<usize>, out: usize, value: Scalar, expected: Scalar },
}

/// `⟨θ♭, ξ_1∧…∧ξ_n⟩ = ⟨θ(ξ_1..ξ_{n−1}), ξ_n⟩`. Errors unless `θ = Ψ(θ♭)`.
pub fn flat(theta: &Cochain) -> Result<Polyvector, FlatError> {
    let s = theta.split();
    let d = s.dim_g;
    let m = theta.arity().unwrap_or(0);
    for (idx, out, value) in theta.nonzero() {
        if !s.is_g(out) || idx.iter().any(|&i| s.is_g(i)) {
            return Err(FlatError::WrongType { inputs: idx, out, value });
        }
    }
    let coeffs = exterior_basis(m + 1, d)
        .into_iter()
        .map(|j| {
            let ins: Vec<usize> = j[..m].iter().map(|&a| a + d).collect();
            theta.get(&ins, j[m])
        })
        .collect();
    let chi = Polyvector::from_coeffs(d, m + 1, coeffs);
    let back = psi(&chi);
    if let Some((inputs, out, value)) = theta.sub(&back).nonzero().into_iter().next() {
        let expected = back.get(&inputs, out);
        return Err(FlatError::NotSkew { inputs, out, value: value + &expected, expected });
    }
    Ok(chi)
}

/// `⟨f⋆(x_1..x_{n−1}, ξ), x_n⟩ = −⟨ξ, f(x_1..x_n)⟩` on `g ⊕ g*`.
pub fn f_star(f: &Cochain) -> Cochain {
    let d = f.split().dim_g;
    let s = Split::new(d, d);
    let n = f.arity().unwrap_or(0);
    Cochain::from_fn(s, n, |idx, o| {
        let g = idx.iter().filter(|&&i| s.is_g(i)).count();
        if s.is_g(o) || g + 1 != n {
            return Scalar::zero();
        }
        let mut args = idx[..n - 1].to_vec();
        args.push(o - d);
        -f.eval_basis(&args)[idx[n - 1] - d].clone()
    })
}

/// `f` on `g`, extended by zero to `g ⊕ g*`.
pub fn lift_g(f: &Cochain) -> Cochain {
    let d = f.split().dim_g;
    f.reindex(Split::new(d, d), |i| i)
}

/// `𝔦(f, χ) = (f + f⋆, Ψ(χ))`.
pub fn iota(f: &Cochain, chi: Option<&Polyvector>) -> (Cochain, Option<Cochain>) {
    (lift_g(f).add(&f_star(f)), chi.map(psi))
}

/// The `g`-valued part on `g`-inputs, as a cochain on `g`.
pub fn restrict_g(f: &Cochain) -> Cochain {
    let d = f.split().dim_g;
    let n = f.arity().unwrap_or(0);
    Cochain::from_fn(Split::pure(d), n, |idx, o| f.get(idx, o))
}

/// `⟨Θf, ξ_1∧…∧ξ_{n+1}⟩ = Σ_i (−1)^{i+1} ⟨ξ_i, f(r♯ξ_1..r♯ξ̂_i..r♯ξ_{n+1})⟩`.
pub fn theta_closed(r: &Polyvector, f: &Cochain) -> Polyvector {
    let d = r.dim();
    let n = f.arity().unwrap_or(0);
    let rs = r_sharp(r);
    let images: Vec<Vec<Scalar>> = (0..d).map(|a| rs.column(a)).collect();
    let coeffs = exterior_basis(n + 1, d)
        .into_iter()
        .map(|j| {
            let mut acc = Scalar::zero();
            for i in 0..=n {
                let args: Vec<Vec<Scalar>> =
                    j.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &a)| images[a].clone()).collect();
                let v = f.eval(&args)[j[i]].clone();
                if i % 2 == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            acc
        })
        .collect();
    Polyvector::from_coeffs(d, n + 1, coeffs)
}

/// `−(id⊗N + N⊗id)(r)` with `x∧y = x⊗y − y⊗x`.
pub fn theta_of_endomorphism(r: &Polyvector, n: &Matrix) -> Polyvector {
    let d = r.dim();
    let mut out = Polyvector::zero(d, 2);
    for j in exterior_basis(2, d) {
        let (a, b) = (j[0], j[1]);
        let mut acc = Scalar::zero();
        for k in 0..d {
            acc += r.get(&[a, k]) * n.get(b, k) + n.get(a, k) * r.get(&[k, b]);
        }
        out.add_at(&j, &-acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::int;

    #[test]
    fn sharp_on_aff1_bivector() {
        let m = r_sharp(&Polyvector::basis(2, &[0, 1]));
        assert_eq!(m.column(0), vec![int(0), int(1)]);
        assert_eq!(m.column(1), vec![int(-1), int(0)]);
    }

    #[test]
    fn psi_of_bivector() {
        let p = psi(&Polyvector::basis(2, &[0, 1]));
        assert_eq!(p.eval_basis(&[2]), vec![int(0), int(1), int(0), int(0)]);
    }

    #[test]
    fn flat_rejects_non_skew() {
        let s = Split::new(2, 2);
        let mut th = Cochain::zero(s, 1);
        th.set(&[2], 1, int(1));
        let err = flat(&th).unwrap_err();
        assert!(matches!(err, FlatError::NotSkew { .. }));
        let mut bad = Cochain::zero(s, 1);
        bad.set(&[0], 1, int(1));
        assert!(matches!(flat(&bad), Err(FlatError::WrongType { .. })));
    }

    #[test]
    fn star_of_identity_is_minus_identity() {
        let id = Cochain::from_fn(Split::pure(3), 1, |idx, o| if idx[0] == o { int(1) } else { int(0) });
        let st = f_star(&id);
        for a in 0..3 {
            let mut want = vec![int(0); 6];
            want[3 + a] = int(-1);
            assert_eq!(st.eval_basis(&[3 + a]), want);
        }
    }
}

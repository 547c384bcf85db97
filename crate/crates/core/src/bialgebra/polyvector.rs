//! Polyvectors `∧^k g` and the Schouten–Nijenhuis bracket.
//!
//! Pairing convention: `⟨x_1∧…∧x_k, ξ_1∧…∧ξ_k⟩ = det(⟨x_i, ξ_j⟩)`, so the
//! basis `e_I` (increasing `I`) is dual to `e*_I`.

use crate::foundation::{exterior_basis, exterior_rank, sort_with_sign, Scalar};
use crate::structures::direct::{self, Tables};
use crate::structures::LieAlgebra;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyvector {
    dim: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

/// One term `coeff · e_{indices}` (0-based, any order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub indices: Vec<usize>,
    pub coeff: Scalar,
}

impl Polyvector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        let len = exterior_basis(degree, dim).len();
        Polyvector { dim, degree, coeffs: vec![Scalar::zero(); len] }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(coeffs.len(), exterior_basis(degree, dim).len(), "coefficient count");
        Polyvector { dim, degree, coeffs }
    }

    /// Sum of `coeff · e_{i_1}∧…∧e_{i_k}`; all terms must have `degree` factors.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(Vec<usize>, Scalar)]) -> Self {
        let mut p = Self::zero(dim, degree);
        for (idx, c) in terms {
            assert_eq!(idx.len(), degree, "term degree");
            p.add_at(idx, c);
        }
        p
    }

    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        Self::from_terms(dim, idx.len(), &[(idx.to_vec(), Scalar::one())])
    }

    /// A vector of `g` as a polyvector of degree 1.
    pub fn from_vector(x: &[Scalar]) -> Self {
        Polyvector { dim: x.len(), degree: 1, coeffs: x.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `e_{idx}` with the sign of the sorting permutation.
    pub fn get(&self, idx: &[usize]) -> Scalar {
        match sort_with_sign(idx) {
            Some((s, sign)) if idx.len() == self.degree => {
                let c = self.coeffs[exterior_rank(&s, self.dim)].clone();
                if sign > 0 {
                    c
                } else {
                    -c
                }
            }
            _ => Scalar::zero(),
        }
    }

    pub fn add_at(&mut self, idx: &[usize], c: &Scalar) {
        if let Some((s, sign)) = sort_with_sign(idx) {
            let r = exterior_rank(&s, self.dim);
            if sign > 0 {
                self.coeffs[r] += c;
            } else {
                self.coeffs[r] -= c;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn terms(&self) -> Vec<Term> {
        exterior_basis(self.degree, self.dim)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(indices, c)| Term { indices, coeff: c.clone() })
            .collect()
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!((self.dim, self.degree), (o.dim, o.degree), "polyvector shapes");
        Polyvector { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Polyvector { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut out = Self::zero(self.dim, self.degree + o.degree);
        let (bi, bj) = (exterior_basis(self.degree, self.dim), exterior_basis(o.degree, o.dim));
        for (i, a) in bi.iter().zip(&self.coeffs).filter(|(_, a)| !a.is_zero()) {
            for (j, b) in bj.iter().zip(&o.coeffs).filter(|(_, b)| !b.is_zero()) {
                let idx: Vec<usize> = i.iter().chain(j).copied().collect();
                out.add_at(&idx, &(a * b));
            }
        }
        out
    }

    /// `⟨P, ξ_1∧…∧ξ_k⟩` for covectors given in the dual basis.
    pub fn pair(&self, xis: &[Vec<Scalar>]) -> Scalar {
        if xis.len() != self.degree {
            return Scalar::zero();
        }
        let supports: Vec<Vec<usize>> =
            xis.iter().map(|x| (0..self.dim).filter(|&i| !x[i].is_zero()).collect()).collect();
        let mut acc = Scalar::zero();
        let mut idx = Vec::with_capacity(self.degree);
        self.pair_rec(xis, &supports, &mut idx, Scalar::one(), &mut acc);
        acc
    }

    fn pair_rec(&self, xis: &[Vec<Scalar>], sup: &[Vec<usize>], idx: &mut Vec<usize>, c: Scalar, acc: &mut Scalar) {
        let d = idx.len();
        if d == xis.len() {
            *acc += c * self.get(idx);
            return;
        }
        for &i in &sup[d] {
            if idx.contains(&i) {
                continue;
            }
            idx.push(i);
            self.pair_rec(xis, sup, idx, &c * &xis[d][i], acc);
            idx.pop();
        }
    }
}

/// Schouten–Nijenhuis bracket on coefficient vectors over any ring:
/// `[x_1∧…∧x_p, y_1∧…∧y_q] = Σ_{i,j} (−1)^{i+j} [x_i,y_j] ∧ x_1..x̂_i..x_p ∧ y_1..ŷ_j..y_q`.
pub fn sn_bracket_tables<R: direct::Ring>(tb: &Tables<R>, a: &[R], p: usize, b: &[R], q: usize) -> Vec<R> {
    let dim = tb.dg;
    let out_deg = p + q - 1;
    let mut out = vec![R::zero(); exterior_basis(out_deg, dim).len()];
    if out.is_empty() {
        return out;
    }
    let (bi, bj) = (exterior_basis(p, dim), exterior_basis(q, dim));
    for (xi, ca) in bi.iter().zip(a).filter(|(_, c)| !c.is_zero()) {
        for (yj, cb) in bj.iter().zip(b).filter(|(_, c)| !c.is_zero()) {
            let c = ca.mul(cb);
            for i in 0..p {
                for j in 0..q {
                    let neg = (i + j) % 2 == 1;
                    let mut idx = vec![0];
                    idx.extend(xi.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &x)| x));
                    idx.extend(yj.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, &y)| y));
                    for k in 0..dim {
                        let z = tb.mu_at(xi[i], yj[j], k);
                        if z.is_zero() {
                            continue;
                        }
                        idx[0] = k;
                        let Some((s, sign)) = sort_with_sign(&idx) else { continue };
                        let r = exterior_rank(&s, dim);
                        let t = c.mul(z);
                        out[r] = if (sign < 0) != neg { out[r].sub(&t) } else { out[r].add(&t) };
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyvectorError {
    #[error("dimension mismatch: algebra {alg}, polyvectors {a} and {b}")]
    Dimension { alg: usize, a: usize, b: usize },
    #[error("degree-0 polyvector in bracket")]
    DegreeZero,
}

pub fn sn_bracket(lie: &LieAlgebra, a: &Polyvector, b: &Polyvector) -> Result<Polyvector, PolyvectorError> {
    let n = lie.dim();
    if a.dim != n || b.dim != n {
        return Err(PolyvectorError::Dimension { alg: n, a: a.dim, b: b.dim });
    }
    if a.degree == 0 || b.degree == 0 {
        return Err(PolyvectorError::DegreeZero);
    }
    let coeffs = sn_bracket_tables(&lie.tables(), &a.coeffs, a.degree, &b.coeffs, b.degree);
    Ok(Polyvector { dim: n, degree: a.degree + b.degree - 1, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::int;
    use crate::registry::{aff1, sl2};

    #[test]
    fn determinant_pairing() {
        let r = Polyvector::basis(2, &[0, 1]);
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert_eq!(r.pair(&[e1.clone(), e2.clone()]), int(1));
        assert_eq!(r.pair(&[e2, e1]), int(-1));
    }

    #[test]
    fn wedge_is_alternating() {
        let x = Polyvector::basis(3, &[2]);
        let y = Polyvector::basis(3, &[0]);
        assert_eq!(x.wedge(&y), Polyvector::basis(3, &[0, 2]).scale(&int(-1)));
        assert!(x.wedge(&x).is_zero());
    }

    #[test]
    fn bracket_of_vectors_is_lie_bracket() {
        let g = sl2();
        let h = Polyvector::basis(3, &[0]);
        let e = Polyvector::basis(3, &[1]);
        assert_eq!(sn_bracket(&g, &h, &e).unwrap(), e.scale(&int(2)));
    }

    #[test]
    fn top_degree_vanishes_in_dim_two() {
        let r = Polyvector::basis(2, &[0, 1]);
        let b = sn_bracket(&aff1(), &r, &r).unwrap();
        assert_eq!(b.degree(), 3);
        assert!(b.coeffs().is_empty());
    }

    /// `[e, h∧e] = [e,h]∧e − [e,e]∧h = −2e∧e = 0` and
    /// `[f, h∧e] = [f,h]∧e − [f,e]∧h = 2f∧e + h∧h = −2e∧f`.
    #[test]
    fn vector_against_bivector() {
        let g = sl2();
        let r = Polyvector::basis(3, &[0, 1]);
        assert!(sn_bracket(&g, &Polyvector::basis(3, &[1]), &r).unwrap().is_zero());
        let got = sn_bracket(&g, &Polyvector::basis(3, &[2]), &r).unwrap();
        assert_eq!(got, Polyvector::basis(3, &[1, 2]).scale(&int(-2)));
    }
}

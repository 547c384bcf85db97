use super::{Cochain, NrError};
use crate::foundation::combinat::{exterior_basis, exterior_rank, shuffles};
use crate::foundation::scalar::sign_scalar;
use crate::foundation::Scalar;
use num_traits::Zero;

/// `(P ∘̄ Q)(x_1..x_{p+q+1}) = Σ_{σ∈S(q+1,p)} sgn(σ) P(Q(x_σ(1..q+1)), x_σ(q+2..))`
/// evaluated directly on sorted basis tuples.
pub fn compose(p: &Cochain, q: &Cochain) -> Cochain {
    let split = p.split();
    let out_degree = p.degree() + q.degree();
    let mut res = Cochain::zero_of_degree(split, out_degree);
    let (Some(pa), Some(qa)) = (p.arity(), q.arity()) else { return res };
    if pa == 0 || p.is_zero() || q.is_zero() {
        return res;
    }
    let n = split.total();
    let ra = pa + qa - 1;
    if ra > n {
        return res;
    }
    let shuf = shuffles(&[qa, pa - 1]);
    for idx in exterior_basis(ra, n) {
        let mut acc = vec![Scalar::zero(); n];
        for s in &shuf {
            let inner: Vec<usize> = s.perm[..qa].iter().map(|&k| idx[k]).collect();
            let rest: Vec<usize> = s.perm[qa..].iter().map(|&k| idx[k]).collect();
            let qrow = q.row(exterior_rank(&inner, n));
            for (m, qm) in qrow.iter().enumerate() {
                if qm.is_zero() || rest.contains(&m) {
                    continue;
                }
                let pos = rest.iter().filter(|&&r| r < m).count();
                let mut merged = rest.clone();
                merged.insert(pos, m);
                let prow = p.row(exterior_rank(&merged, n));
                let sign = if (pos % 2 == 0) == (s.sign > 0) { 1 } else { -1 };
                for (o, pv) in prow.iter().enumerate() {
                    if !pv.is_zero() {
                        if sign > 0 {
                            acc[o] += qm * pv;
                        } else {
                            acc[o] -= qm * pv;
                        }
                    }
                }
            }
        }
        for (o, x) in acc.into_iter().enumerate() {
            if !x.is_zero() {
                res.set(&idx, o, x);
            }
        }
    }
    res
}

/// `[P, Q] = P ∘̄ Q − (−1)^{pq} Q ∘̄ P`, with `p, q` the NR degrees.
pub fn nr_bracket(p: &Cochain, q: &Cochain) -> Result<Cochain, NrError> {
    if p.split() != q.split() {
        return Err(NrError::SplitMismatch(p.split(), q.split()));
    }
    Ok(nr_bracket_unchecked(p, q))
}

/// Same as [`nr_bracket`]; panics on mismatched splits.
pub fn nr_bracket_unchecked(p: &Cochain, q: &Cochain) -> Cochain {
    let mut r = compose(p, q);
    let s = sign_scalar((p.degree() as i64) * (q.degree() as i64));
    r.add_scaled(&compose(q, p), &-s);
    r
}

/// Courant-type bracket `⟦θ, φ⟧ = (−1)^{n−1} [[π, θ], φ]` on `⊕ Hom(∧^n V, g)`.
pub fn courant_bracket(pi: &Cochain, theta: &Cochain, phi: &Cochain) -> Result<Cochain, NrError> {
    for c in [theta, phi] {
        if c.split() != pi.split() {
            return Err(NrError::SplitMismatch(c.split(), pi.split()));
        }
        let l = c.degree() + 1;
        if !c.has_bidegree(-1, l) {
            return Err(NrError::BidegreeViolation {
                expected: format!("-1|{l}"),
                found: format!("{:?}", c.bidegrees()),
            });
        }
    }
    let n = theta.degree() as i64 + 1;
    let inner = nr_bracket_unchecked(pi, theta);
    Ok(nr_bracket_unchecked(&inner, phi).scale(&sign_scalar(n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::combinat::{binomial, exterior_basis};
    use crate::foundation::{int, Scalar};
    use crate::nrcore::coder::{commutator_matches_on, nr_bracket_via_coderivations};
    use crate::nrcore::Split;
    use proptest::prelude::*;

    fn cochain_from(split: Split, arity: usize, raw: &[i8]) -> Cochain {
        let n = split.total();
        let mut c = Cochain::zero(split, arity);
        let mut k = 0;
        for idx in exterior_basis(arity, n) {
            for o in 0..n {
                let v = raw[k % raw.len()];
                k += 1;
                // keep things sparse
                if v.abs() <= 2 {
                    c.set(&idx, o, int(v as i64));
                }
            }
        }
        c
    }

    fn arb_cochain(split: Split, max_arity: usize) -> impl Strategy<Value = Cochain> {
        (1..=max_arity, proptest::collection::vec(-5i8..=5, 1..40))
            .prop_map(move |(a, raw)| cochain_from(split, a, &raw))
    }

    #[test]
    fn mu_mu_closed_form() {
        let s = Split::pure(3);
        let mu = cochain_from(s, 2, &[1, -1, 0, 2, 1, 0, -2, 1, 1]);
        let sq = nr_bracket(&mu, &mu).unwrap();
        for idx in exterior_basis(3, 3) {
            let (x, y, z) = (idx[0], idx[1], idx[2]);
            let m = |a: &[Scalar], b: usize| {
                let mut e = vec![int(0); 3];
                e[b] = int(1);
                mu.eval(&[a.to_vec(), e])
            };
            let xy = mu.eval_basis(&[x, y]);
            let yz = mu.eval_basis(&[y, z]);
            let zx = mu.eval_basis(&[z, x]);
            let expect: Vec<Scalar> = (0..3)
                .map(|o| int(2) * (&m(&xy, z)[o] + &m(&yz, x)[o] + &m(&zx, y)[o]))
                .collect();
            assert_eq!(sq.eval_basis(&idx), expect);
        }
    }

    #[test]
    fn bracket_with_identity() {
        let s = Split::pure(3);
        let mu = cochain_from(s, 2, &[1, 0, -1, 2, 0, 1]);
        let id = Cochain::from_fn(s, 1, |idx, o| if idx[0] == o { int(1) } else { int(0) });
        assert_eq!(nr_bracket(&mu, &id).unwrap(), mu);
    }

    #[test]
    fn arity_zero_inputs() {
        // [μ, x] = [x, ·] for x ∈ g viewed as a (−1)-cochain
        let s = Split::pure(2);
        let mut mu = Cochain::zero(s, 2);
        mu.set(&[0, 1], 1, int(1));
        let mut x = Cochain::zero(s, 0);
        x.set(&[], 0, int(1));
        let b = nr_bracket(&mu, &x).unwrap();
        assert_eq!(b.eval_basis(&[1]), vec![int(0), int(1)]);
        assert_eq!(b.eval_basis(&[0]), vec![int(0), int(0)]);
        assert_eq!(binomial(2, 1), 2);
    }

    #[test]
    fn split_mismatch_is_an_error() {
        let a = Cochain::zero(Split::pure(2), 1);
        let b = Cochain::zero(Split::new(2, 1), 1);
        assert!(matches!(nr_bracket(&a, &b), Err(crate::nrcore::NrError::SplitMismatch(..))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn coderivation_route_agrees(p in arb_cochain(Split::new(2, 2), 3), q in arb_cochain(Split::new(2, 2), 3)) {
            prop_assert_eq!(nr_bracket(&p, &q).unwrap(), nr_bracket_via_coderivations(&p, &q));
        }

        #[test]
        fn coderivation_commutator(p in arb_cochain(Split::new(2, 1), 2), q in arb_cochain(Split::new(2, 1), 2)) {
            for m in 1..=3 {
                prop_assert!(commutator_matches_on(&p, &q, m));
            }
        }

        #[test]
        fn graded_antisymmetry(p in arb_cochain(Split::new(2, 1), 3), q in arb_cochain(Split::new(2, 1), 3)) {
            let pq = nr_bracket(&p, &q).unwrap();
            let qp = nr_bracket(&q, &p).unwrap();
            let s = crate::foundation::scalar::sign_scalar((p.degree() * q.degree()) as i64);
            prop_assert_eq!(pq, qp.scale(&-s));
        }

        #[test]
        fn graded_jacobi(p in arb_cochain(Split::new(1, 2), 2), q in arb_cochain(Split::new(1, 2), 2), r in arb_cochain(Split::new(1, 2), 2)) {
            // [p,[q,r]] = [[p,q],r] + (−1)^{pq}[q,[p,r]]
            let lhs = nr_bracket(&p, &nr_bracket(&q, &r).unwrap()).unwrap();
            let a = nr_bracket(&nr_bracket(&p, &q).unwrap(), &r).unwrap();
            let b = nr_bracket(&q, &nr_bracket(&p, &r).unwrap()).unwrap();
            let s = crate::foundation::scalar::sign_scalar((p.degree() * q.degree()) as i64);
            prop_assert_eq!(lhs, a.add(&b.scale(&s)));
        }

        #[test]
        fn bidegrees_add(p in arb_cochain(Split::new(2, 2), 3), q in arb_cochain(Split::new(2, 2), 3)) {
            for (k1, l1) in p.bidegrees() {
                for (k2, l2) in q.bidegrees() {
                    let b = nr_bracket(&p.component(k1, l1), &q.component(k2, l2)).unwrap();
                    prop_assert!(b.has_bidegree(k1 + k2, l1 + l2));
                    if k1 == -1 && k2 == -1 {
                        prop_assert!(b.is_zero());
                    }
                }
            }
        }
    }
}

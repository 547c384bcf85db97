//! Worked graded examples.

use super::dict::{desuspend_dgla, desuspend_rbo, DgLie};
use super::linf::{LinftyAlgebra, LinftyRep};
use super::map::{keys_for, mn_bracket_truncated, Flavor, GradedMap};
use super::prelie::{strict_rbo_to_prelie, PreLieInf};
use super::rbo::HomotopyRbo;
use super::space::GradedSpace;
use crate::foundation::{int, Matrix, MultiIndex, Scalar};
use crate::registry;
use num_traits::Zero;
use std::sync::Arc;

/// dgLa `aff(1) ⊕ ⟨b⟩` with `|x| = |y| = 0`, `|b| = 1`, `[x,y] = y`,
/// `[x,b] = b`, `dx = b`; desuspended to degrees `(−1, −1, 0)`.
pub fn aff1_dg_data() -> DgLie {
    let space = GradedSpace::new(vec![0, 0, 1], vec!["x".into(), "y".into(), "b".into()]).expect("labels");
    DgLie { space, d: vec![(0, 2, int(1))], bracket: vec![(0, 1, 1, int(1)), (0, 2, 2, int(1))] }
}

/// Two-term L∞-algebra with `l_1 ≠ 0`, `l_2 ≠ 0`, `l_3 = 0`.
pub fn aff1_dg() -> LinftyAlgebra {
    desuspend_dgla(&aff1_dg_data()).expect("dgLa data")
}

pub fn aff1_dg_adjoint() -> LinftyRep {
    LinftyRep::adjoint(&aff1_dg())
}

/// Non-strict operator on the adjoint representation of [`aff1_dg`]:
/// `T_1(x) = x`, `T_1(b) = b`, `T_2(x, b) = x` (inputs in the `V` copy).
pub fn aff1_dg_homotopy_rbo() -> HomotopyRbo {
    let rep = aff1_dg_adjoint();
    let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: 3 }, 0);
    for (key, o) in [(vec![3], 0), (vec![5], 2), (vec![3, 5], 0)] {
        t.add_term(&key, o, &int(1)).expect("degree-0 slot");
    }
    HomotopyRbo::new(rep, t).expect("maps into g")
}

/// `(aff(1), ad, T₀)` desuspended: a strict operator with `T_1 = T₀`.
pub fn aff1_t0_graded() -> HomotopyRbo {
    desuspend_rbo(&registry::aff1_t0_relative())
}

/// Pre-Lie∞-algebra induced by the desuspended `T₀`.
pub fn t0_prelie() -> PreLieInf {
    strict_rbo_to_prelie(&aff1_t0_graded()).expect("T0 is strict and verified")
}

/// `V = ⟨x, y⟩` with `|x| = −1`, `|y| = 0`.
pub fn two_term_space() -> Arc<GradedSpace> {
    Arc::new(GradedSpace::new(vec![-1, 0], vec!["x".into(), "y".into()]).expect("labels"))
}

/// Coordinate slots `(key, output)` of degree-1 maps of weight `k`.
fn slots(space: &Arc<GradedSpace>, k: usize) -> Vec<(MultiIndex, usize)> {
    let mut out = Vec::new();
    for key in keys_for(space, Flavor::SymTensorToSelf, k) {
        let d: i32 = key.iter().map(|&i| space.degree(i)).sum::<i32>() + 1;
        for o in space.basis_of_degree(d) {
            out.push((key.clone(), o));
        }
    }
    out
}

fn assemble(space: &Arc<GradedSpace>, parts: &[(&[(MultiIndex, usize)], &[Scalar])]) -> GradedMap {
    let mut r = GradedMap::zero(space.clone(), Flavor::SymTensorToSelf, 1);
    for (sl, cs) in parts {
        for ((key, o), c) in sl.iter().zip(cs.iter()) {
            r.add_term(key, *o, c).expect("degree-1 slot");
        }
    }
    r
}

/// Coefficients of `[𝔯,𝔯]_MN` in the given weights, in slot order.
fn mc_coords(space: &Arc<GradedSpace>, r: &GradedMap, weights: &[usize]) -> Vec<Scalar> {
    let sq = mn_bracket_truncated(r, r, *weights.iter().max().unwrap_or(&0));
    let mut out = Vec::new();
    for &w in weights {
        for key in keys_for(space, Flavor::SymTensorToSelf, w) {
            out.extend(sq.eval_basis(&key));
        }
    }
    out
}

fn small_vectors(n: usize, range: &[i64]) -> Vec<Vec<Scalar>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Scalar>| {
                range.iter().map(move |&x| {
                    let mut w = v.clone();
                    w.push(int(x));
                    w
                })
            })
            .collect();
    }
    out
}

/// Pre-Lie∞ structure on [`two_term_space`] with `𝔯_1, 𝔯_2` drawn from
/// `{−1, 0, 1}` and `𝔯_3 ≠ 0`. The weight-3 and weight-4 components of the
/// MC equation are affine in `𝔯_3` and solved exactly; the weight-5
/// component is quadratic and searched over small integer combinations of
/// the affine solution set. Candidates with nonzero `𝔯_1` or `𝔯_2` come first.
pub fn solve_two_term_prelie() -> Option<PreLieInf> {
    let space = two_term_space();
    let (s1, s2, s3) = (slots(&space, 1), slots(&space, 2), slots(&space, 3));
    let unit = int(1);
    let mut lower: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    for c1 in small_vectors(s1.len(), &[-1, 0, 1]) {
        for c2 in small_vectors(s2.len(), &[-1, 0, 1]) {
            let r = assemble(&space, &[(&s1, &c1), (&s2, &c2)]);
            if mc_coords(&space, &r, &[1, 2]).iter().all(Zero::is_zero) {
                lower.push((c1.clone(), c2));
            }
        }
    }
    lower.sort_by_key(|(a, b)| a.iter().chain(b).all(Zero::is_zero));
    for (c1, c2) in lower {
        let at = |c3: &[Scalar]| {
            let r = assemble(&space, &[(&s1, &c1), (&s2, &c2), (&s3, c3)]);
            mc_coords(&space, &r, &[3, 4])
        };
        let zero3 = vec![Scalar::zero(); s3.len()];
        let b = at(&zero3);
        let cols: Vec<Vec<Scalar>> = (0..s3.len())
            .map(|i| {
                let mut e = zero3.clone();
                e[i] = unit.clone();
                at(&e).iter().zip(&b).map(|(x, y)| x - y).collect()
            })
            .collect();
        let m = Matrix::from_columns(b.len(), &cols);
        let rhs: Vec<Scalar> = b.iter().map(|x| -x.clone()).collect();
        let Some(p) = m.solve(&rhs) else { continue };
        let kernel = m.kernel_basis();
        for coeffs in small_vectors(kernel.len(), &[0, 1, -1, 2, -2]) {
            let mut c3 = p.clone();
            for (n, k) in coeffs.iter().zip(&kernel) {
                for (a, x) in c3.iter_mut().zip(k) {
                    *a += n * x;
                }
            }
            if c3.iter().all(Zero::is_zero) {
                continue;
            }
            let r = assemble(&space, &[(&s1, &c1), (&s2, &c2), (&s3, &c3)]);
            if let Ok(p) = PreLieInf::new(r) {
                return Some(p);
            }
        }
    }
    None
}

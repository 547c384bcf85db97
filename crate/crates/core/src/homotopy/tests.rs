use super::dict::*;
use super::examples::*;
use super::linf::*;
use super::map::*;
use super::prelie::*;
use super::rbo::*;
use super::space::GradedSpace;
use super::HomotopyError;
use crate::foundation::{frac, int, Matrix, Scalar};
use crate::nrcore::{courant_bracket, Cochain};
use crate::registry;
use crate::structures::{mc_check, prelie_from_rbo, RelativeRbo, Representation};
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::Arc;

fn space(degs: &[i32]) -> Arc<GradedSpace> {
    let labels = (1..=degs.len()).map(|i| format!("u{i}")).collect();
    Arc::new(GradedSpace::new(degs.to_vec(), labels).unwrap())
}

fn coords(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn desuspended_lie_algebras_are_linfty() {
    for lie in [registry::aff1(), registry::heis3(), registry::sl2(), registry::abelian(3)] {
        let r = verify_linfty(&desuspend_lie(&lie));
        assert!(r.ok && r.routes_agree, "{lie:?}");
    }
    let r = verify_linfty(&desuspend_lie(&registry::heis3_broken()));
    assert!(!r.ok && r.routes_agree);
    assert!(r.witness.is_some());
}

#[test]
fn desuspended_bracket_keeps_coefficients() {
    // l_2(s^-1 e1, s^-1 e2) = s^-1 [e1, e2] = s^-1 e2 on aff(1)
    let l = desuspend_lie(&registry::aff1());
    assert_eq!(l.structure().eval_basis(&[0, 1]), coords(&[0, 1]));
    assert_eq!(l.structure().eval_basis(&[1, 0]), coords(&[0, -1]));
}

#[test]
fn two_term_dgla_is_linfty() {
    let l = aff1_dg();
    assert_eq!(l.structure().weights(), vec![1, 2]);
    assert_eq!(l.space().degrees(), &[-1, -1, 0]);
    // l_1(s^-1 x) = s^-1 b, l_2(s^-1 x, s^-1 b) = s^-1 b
    assert_eq!(l.structure().eval_basis(&[0]), coords(&[0, 0, 1]));
    assert_eq!(l.structure().eval_basis(&[0, 2]), coords(&[0, 0, 1]));
    let r = verify_linfty(&l);
    assert!(r.ok && r.routes_agree);
    assert!(graded_nr_bracket(l.structure(), l.structure()).unwrap().is_zero());
}

#[test]
fn broken_bracket_is_caught() {
    let mut dg = aff1_dg_data();
    dg.bracket.push((1, 2, 2, int(1)));
    let l = desuspend_dgla(&dg).unwrap();
    let r = verify_linfty(&l);
    assert!(!r.ok && r.routes_agree);
}

#[test]
fn weight_one_brackets_are_commutators() {
    let s = space(&[0, 0]);
    let mut f = GradedMap::zero(s.clone(), Flavor::SymToSelf, 0);
    f.add_term(&[0], 1, &int(1)).unwrap();
    let mut g = GradedMap::zero(s.clone(), Flavor::SymToSelf, 0);
    g.add_term(&[1], 0, &int(1)).unwrap();
    let b = graded_nr_bracket(&f, &g).unwrap();
    // f∘g − g∘f = E11 − E00 as matrices acting on the right
    assert_eq!(b.eval_basis(&[0]), coords(&[-1, 0]));
    assert_eq!(b.eval_basis(&[1]), coords(&[0, 1]));
}

#[test]
fn nr_bracket_rejects_tensor_maps() {
    let s = space(&[0]);
    let t = GradedMap::zero(s.clone(), Flavor::SymTensorToSelf, 1);
    let f = GradedMap::zero(s, Flavor::SymToSelf, 1);
    assert!(matches!(graded_nr_bracket(&t, &f), Err(HomotopyError::FlavorMismatch { .. })));
    assert!(matches!(graded_mn_bracket(&f, &t), Err(HomotopyError::FlavorMismatch { .. })));
    assert!(phi(&f).is_err());
}

#[test]
fn degree_bookkeeping_is_enforced() {
    let s = space(&[-1, 0]);
    let mut f = GradedMap::zero(s, Flavor::SymToSelf, 1);
    assert!(matches!(f.add_term(&[1], 1, &int(1)), Err(HomotopyError::DegreeBookkeeping { .. })));
    assert!(f.add_term(&[0, 0], 0, &int(1)).is_err());
    f.add_term(&[0], 1, &int(1)).unwrap();
    assert!(f.check_symmetry());
}

#[test]
fn adjoint_and_zero_representations() {
    for alg in [aff1_dg(), desuspend_lie(&registry::aff1()), desuspend_lie(&registry::sl2())] {
        let rep = LinftyRep::adjoint(&alg);
        let r = verify_linfty_rep(&rep);
        assert!(r.ok && r.routes_agree);
        let sd = semidirect(&rep).unwrap();
        assert_eq!(*sd.structure(), rep.delta());
        assert!(verify_linfty(&sd).ok);
    }
    let alg = aff1_dg();
    let v = space(&[0, -1]);
    let rep = LinftyRep::zero(alg.clone(), v);
    let sd = semidirect(&rep).unwrap();
    assert_eq!(*sd.structure(), rep.lifted_l());
}

#[test]
fn broken_representation_is_caught() {
    let alg = desuspend_lie(&registry::aff1());
    let v = Arc::new(GradedSpace::concentrated(1, -1, "v"));
    let w = Arc::new(alg.space().direct_sum(&v));
    let mut rho = GradedMap::zero(w, Flavor::SymToSelf, 1);
    // ρ(e2) = 1 on a line while ρ(e1) = 0 violates ρ([e1,e2]) = [ρ(e1), ρ(e2)]
    rho.add_term(&[1, 2], 2, &int(1)).unwrap();
    let rep = LinftyRep::new(alg, v, rho).unwrap();
    let r = verify_linfty_rep(&rep);
    assert!(!r.ok && r.routes_agree);
    assert!(semidirect(&rep).is_err());
}

#[test]
fn semidirect_formula_matches_on_mixed_pairs() {
    let rep = aff1_dg_adjoint();
    let sd = semidirect(&rep).unwrap();
    // ((s^-1 x, s^-1 y), (s^-1 x, s^-1 x)) as homogeneous degree −1 pairs
    let a = (-1, coords(&[1, 0, 0]), coords(&[0, 1, 0]));
    let b = (-1, coords(&[1, 0, 0]), coords(&[1, 0, 0]));
    let (x, v) = semidirect_bracket(&rep, &[a.clone(), b.clone()]);
    let flat = |p: &(i32, Vec<Scalar>, Vec<Scalar>)| p.1.iter().chain(&p.2).cloned().collect::<Vec<_>>();
    let direct = sd.structure().eval(&[&flat(&a), &flat(&b)]);
    assert_eq!(direct, x.into_iter().chain(v).collect::<Vec<_>>());
}

#[test]
fn classical_operator_embeds_as_strict_operator() {
    let op = aff1_t0_graded();
    let r = verify_homotopy_rbo(&op, None).unwrap();
    assert!(r.report.ok && r.report.routes_agree);
    assert_eq!(r.p_max, 4);
    let bad = desuspend_rbo(&RelativeRbo::raw(registry::adjoint(registry::aff1()), Matrix::identity(2)).unwrap());
    let r = verify_homotopy_rbo(&bad, None).unwrap();
    assert!(!r.report.ok && r.report.routes_agree);
}

#[test]
fn zero_operator_and_zero_structure() {
    let rep = aff1_dg_adjoint();
    let r = verify_homotopy_rbo(&HomotopyRbo::zero(rep), None).unwrap();
    assert!(r.report.ok && r.report.routes_agree);
    let g = space(&[-1, 0]);
    let v = space(&[0, -1]);
    let rep = LinftyRep::zero(LinftyAlgebra::abelian(g), v);
    let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: 2 }, 0);
    t.add_term(&[2], 1, &int(3)).unwrap();
    t.add_term(&[2, 3], 0, &int(-2)).unwrap();
    let op = HomotopyRbo::new(rep, t).unwrap();
    assert!(verify_homotopy_rbo(&op, None).unwrap().report.ok);
}

#[test]
fn p_max_beyond_certified_bound_is_rejected() {
    let op = aff1_t0_graded();
    assert_eq!(op.certified_bound(), 4);
    assert!(matches!(
        verify_homotopy_rbo(&op, Some(5)),
        Err(HomotopyError::PMaxTooLarge { requested: 5, bound: 4 })
    ));
}

#[test]
fn operator_must_map_into_g() {
    let rep = aff1_dg_adjoint();
    let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToSelf, 0);
    t.add_term(&[3], 4, &int(1)).unwrap();
    assert!(HomotopyRbo::new(rep.clone(), t).is_err());
    let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: 3 }, 0);
    assert!(t.add_term(&[0], 0, &int(1)).is_err());
}

#[test]
fn derived_brackets_match_the_classical_bracket() {
    let rep = registry::adjoint(registry::aff1());
    let split = rep.split();
    let pi = rep.pi();
    let w = desuspended_space(&rep.labels_w());
    let vd = VData::new(desuspend_rep(&rep)).unwrap();
    let theta = Cochain::from_fn(split, 1, |idx, o| if split.is_g(idx[0]) || !split.is_g(o) { int(0) } else { int((idx[0] + 2 * o) as i64 - 1) });
    let phi_c = Cochain::from_fn(split, 2, |idx, o| {
        if idx.iter().any(|&i| split.is_g(i)) || !split.is_g(o) {
            int(0)
        } else {
            int(o as i64 + 1)
        }
    });
    for (a, b) in [(&theta, &theta), (&theta, &phi_c), (&phi_c, &theta)] {
        let classical = courant_bracket(&pi, a, b).unwrap();
        let n = a.degree() as i64 + 1;
        let graded = vd.derived_bracket(&[&encode(a, &w), &encode(b, &w)], 4).unwrap();
        let expect = encode(&classical, &w).scale(&crate::foundation::scalar::sign_scalar(n - 1));
        assert_eq!(graded, expect);
    }
    let first = vd.derived_bracket(&[&encode(&theta, &w)], 4).unwrap();
    assert_eq!(first, project_h(&graded_nr_bracket(vd.delta(), &encode(&theta, &w)).unwrap(), 2));
    assert!(matches!(vd.derived_bracket(&[vd.delta()], 4), Err(HomotopyError::NotInH(_))));
}

#[test]
fn derived_brackets_vanish_without_delta() {
    let rep = LinftyRep::zero(LinftyAlgebra::abelian(space(&[-1])), space(&[-1, 0]));
    let vd = VData::new(rep).unwrap();
    let mut t = GradedMap::zero(vd.w_space().clone(), Flavor::SymToG { g_dim: 1 }, 0);
    t.add_term(&[1], 0, &int(1)).unwrap();
    assert!(vd.derived_bracket(&[&t, &t], 3).unwrap().is_zero());
}

#[test]
fn bigger_algebra_on_lprime_is_closed() {
    let vd = VData::new(desuspend_rep(&registry::adjoint(registry::aff1()))).unwrap();
    assert!(vd.check_closure(lprime_slot(2), 2).is_ok());
    let err = vd.check_closure(|k, o| k.len() == 1 && k[0] < 2 && o < 2, 2).unwrap_err();
    assert!(matches!(err, HomotopyError::Closure { .. }));
}

#[test]
fn bigger_algebra_binary_bracket_sign() {
    let vd = VData::new(aff1_dg_adjoint()).unwrap();
    let alg = vd.bigger_linfty(3);
    let w = vd.w_space().clone();
    let mut x = GradedMap::zero(w.clone(), Flavor::SymToSelf, 0);
    x.add_term(&[0], 1, &int(1)).unwrap();
    let mut y = GradedMap::zero(w.clone(), Flavor::SymToSelf, 1);
    y.add_term(&[0], 2, &int(1)).unwrap();
    let zero = |d| GradedMap::zero(w.clone(), Flavor::SymToSelf, d);
    // s^-1 x has degree −1 in s^-1 L, so l_2(s^-1 x, s^-1 y) = (−1)^{|x|} s^-1 [x, y] = s^-1 [x, y]
    let a = alg.pair(x.clone(), zero(-1));
    let b = alg.pair(y.clone(), zero(0));
    use crate::linfty::Linfty;
    let v = alg.bracket(&[&a, &b]);
    assert_eq!(v.x, graded_nr_bracket(&x, &y).unwrap());
}

#[test]
fn graded_mc_test_agrees_with_classical() {
    let ops: Vec<RelativeRbo> = vec![
        registry::aff1_t0_relative(),
        registry::aff1_nilpotent().as_relative(),
        RelativeRbo::raw(registry::adjoint(registry::aff1()), Matrix::identity(2)).unwrap(),
        RelativeRbo::raw(Representation::adjoint(registry::heis3_broken()), Matrix::zeros(3, 3)).unwrap(),
    ];
    for op in ops {
        let c = mc_check(&op);
        let w = desuspended_space(&op.rep().labels_w());
        let g = op.lie().dim();
        let pi = encode(&op.rep().pi(), &w);
        let t = encode(&op.t_cochain(), &w);
        let v = graded_mc_value(w.clone(), g, &pi, &t);
        assert_eq!(v.x.is_zero(), c.lie_rep_ok);
        assert_eq!(v.a.is_zero(), c.operator_ok);
        assert_eq!(v.x, encode(&c.value.x, &w));
        assert_eq!(v.a, encode(&c.value.a, &w));
    }
}

#[test]
fn twisting_the_classical_operator_gives_the_commutator() {
    let op = aff1_t0_graded();
    let rep = twist_report(&op).unwrap();
    assert!(rep.ok(), "{rep:?}");
    let classical = prelie_from_rbo(&registry::aff1_t0_relative()).unwrap();
    let l2 = rep.structure.bracket_map(2);
    for a in 0..2 {
        for b in 0..2 {
            if a != b {
                assert_eq!(l2.eval_basis(&[a, b]), classical.commutator(a, b));
            }
        }
    }
}

#[test]
fn twisting_with_zero_operator_restricts_rho() {
    let rep = aff1_dg_adjoint();
    let op = HomotopyRbo::zero(rep.clone());
    let l = twist_by_t(&op).unwrap();
    assert_eq!(*l.structure(), rep.rho().filter(|k, _| k.len() == 1).shifted(rep.v_space().clone(), Flavor::SymToSelf, -3));
    assert!(twist_report(&op).unwrap().ok());
}

#[test]
fn phi_of_binary_product_is_commutator() {
    let p = t0_prelie();
    let l = phi(p.structure()).unwrap();
    // 𝔯_2(e1, e2) = e1 ▹ e2 = e2
    assert_eq!(p.structure().eval_basis(&[0, 1]), coords(&[0, 1]));
    let classical = prelie_from_rbo(&registry::aff1_t0_relative()).unwrap();
    assert_eq!(l.eval_basis(&[0, 1]), classical.commutator(0, 1));
    assert!(phi(&GradedMap::zero(p.space().clone(), Flavor::SymTensorToSelf, 1)).unwrap().is_zero());
}

#[test]
fn classical_prelie_passes_all_checks() {
    let p = t0_prelie();
    let c = prelie_checks(&p).unwrap();
    assert!(c.ok(), "{c:?}");
    let op = aff1_t0_graded();
    assert!(strict_morphism_check(&op, &p, 3).unwrap().ok);
}

#[test]
fn zero_prelie_is_trivial() {
    let p = PreLieInf::zero(two_term_space());
    assert!(p.subadjacent().unwrap().structure().is_zero());
    assert!(p.left_mult_rep().unwrap().rho().is_zero());
    assert!(prelie_checks(&p).unwrap().ok());
}

#[test]
fn zero_operator_gives_zero_prelie() {
    let op = HomotopyRbo::zero(desuspend_rep(&registry::adjoint(registry::aff1())));
    assert!(strict_rbo_to_prelie(&op).unwrap().structure().is_zero());
}

#[test]
fn solved_two_term_prelie_has_ternary_part() {
    let p = solve_two_term_prelie().expect("solution in the searched family");
    assert!(!p.structure().component(3).is_zero());
    assert!(p.verify().routes_agree);
    let c = prelie_checks(&p).unwrap();
    assert!(c.ok(), "{c:?}");
}

#[test]
fn unverified_prelie_is_rejected() {
    let s = two_term_space();
    let mut r = GradedMap::zero(s.clone(), Flavor::SymTensorToSelf, 1);
    r.add_term(&[0], 1, &int(1)).unwrap();
    r.add_term(&[0, 0], 0, &int(1)).unwrap();
    let p = PreLieInf::raw(r.clone()).unwrap();
    if !p.verify().ok {
        assert!(PreLieInf::new(r).is_err());
        assert!(p.subadjacent().is_err());
    }
}

#[test]
fn invertible_correspondence_round_trips() {
    let p = t0_prelie();
    let op = p.identity_operator().unwrap();
    let (o, compatible) = invertible_correspondence(&op).unwrap();
    assert!(compatible);
    assert_eq!(o, p);
    assert!(matches!(invertible_correspondence(&aff1_t0_graded()), Err(HomotopyError::NotInvertible)));
    let q = solve_two_term_prelie().unwrap();
    let (_, compatible) = invertible_correspondence(&q.identity_operator().unwrap()).unwrap();
    assert!(compatible);
}

#[test]
fn non_strict_operator_is_rejected() {
    let g = space(&[-1]);
    let v = space(&[0, -1]);
    let rep = LinftyRep::zero(LinftyAlgebra::abelian(g), v);
    let mut t = GradedMap::zero(rep.w_space().clone(), Flavor::SymToG { g_dim: 1 }, 0);
    t.add_term(&[1, 2], 0, &int(1)).unwrap();
    let op = HomotopyRbo::new(rep, t).unwrap();
    assert!(matches!(strict_rbo_to_prelie(&op), Err(HomotopyError::NotStrict)));
}

#[test]
fn dictionary_round_trips_registry_structures() {
    let ops = vec![
        registry::aff1_t0_relative(),
        registry::aff1_nilpotent().as_relative(),
        RelativeRbo::raw(registry::adjoint(registry::aff1()), Matrix::identity(2)).unwrap(),
        RelativeRbo::raw(registry::adjoint(registry::heis3()), Matrix::identity(3)).unwrap(),
        RelativeRbo::raw(registry::adjoint(registry::sl2()), Matrix::zeros(3, 3)).unwrap(),
        RelativeRbo::raw(Representation::adjoint(registry::heis3_broken()), Matrix::zeros(3, 3)).unwrap(),
    ];
    for op in ops {
        let h = desuspend_rbo(&op);
        let back = suspend_rbo(&h).unwrap();
        assert_eq!(back.t(), op.t());
        assert_eq!(back.rep().pi(), op.rep().pi());
        assert_eq!(verify_linfty(h.rep().alg()).ok, op.lie().verify().ok);
        let rep_ok = op.lie().verify().ok && op.rep().verify().ok;
        assert_eq!(verify_linfty_rep(h.rep()).ok, rep_ok);
        let graded = verify_homotopy_rbo(&h, None).unwrap().report;
        assert!(graded.routes_agree);
        if rep_ok {
            assert_eq!(graded.ok, op.verify().ok);
        }
    }
}

#[test]
fn dgla_sign_convention_for_odd_inputs() {
    // [b, b'] for two degree-1 elements carries (−1)^{|b|} = −1 after desuspension
    let s = GradedSpace::new(vec![1, 1, 2], vec!["b".into(), "c".into(), "z".into()]).unwrap();
    let dg = DgLie { space: s, d: vec![], bracket: vec![(0, 1, 2, int(1))] };
    let l = desuspend_dgla(&dg).unwrap();
    assert_eq!(l.structure().eval_basis(&[0, 1]), coords(&[0, 0, -1]));
    assert!(verify_linfty(&l).ok);
}

#[test]
fn nilpotency_guard_holds_for_examples() {
    assert!(nilpotency_guard(&aff1_t0_graded()));
    let q = solve_two_term_prelie().unwrap();
    assert!(nilpotency_guard(&q.identity_operator().unwrap()));
}

#[test]
fn half_coefficients_survive() {
    let op = RelativeRbo::raw(registry::adjoint(registry::aff1()), Matrix::from_dense(2, 2, &[vec![frac(1, 2), int(0)], vec![int(0), int(0)]])).unwrap();
    let h = desuspend_rbo(&op);
    assert_eq!(verify_homotopy_rbo(&h, None).unwrap().report.ok, op.verify().ok);
}

// ---------------------------------------------------------------- properties

const SMALL: [i64; 5] = [-2, -1, 0, 1, 2];

/// Random map of the given degree and flavor with weights in `weights`.
fn random_map(s: &Arc<GradedSpace>, flavor: Flavor, degree: i32, weights: &[usize], seed: &[usize]) -> GradedMap {
    let mut m = GradedMap::zero(s.clone(), flavor, degree);
    let mut i = 0;
    for &k in weights {
        for key in m.keys(k) {
            let d = key.iter().map(|&j| s.degree(j)).sum::<i32>() + degree;
            for o in s.basis_of_degree(d) {
                if let Flavor::SymToG { g_dim } = flavor {
                    if o >= g_dim {
                        continue;
                    }
                }
                let c = SMALL[seed[i % seed.len()] % SMALL.len()];
                i += 1;
                m.add_term(&key, o, &int(c)).unwrap();
            }
        }
    }
    m
}

fn seeds() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..5, 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn phi_is_a_homomorphism(sa in seeds(), sb in seeds(), da in -1i32..2, db in -1i32..2) {
        let s = two_term_space();
        let f = random_map(&s, Flavor::SymTensorToSelf, da, &[1, 2, 3], &sa);
        let g = random_map(&s, Flavor::SymTensorToSelf, db, &[1, 2], &sb);
        let lhs = phi(&graded_mn_bracket(&f, &g).unwrap()).unwrap();
        let rhs = graded_nr_bracket(&phi(&f).unwrap(), &phi(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn random_operators_direct_and_mc_agree(seed in seeds()) {
        let rep = aff1_dg_adjoint();
        let t = random_map(rep.w_space(), Flavor::SymToG { g_dim: 3 }, 0, &[1, 2, 3], &seed);
        let op = HomotopyRbo::new(rep, t).unwrap();
        let r = verify_homotopy_rbo(&op, None).unwrap();
        prop_assert!(r.report.routes_agree);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn nr_bracket_is_graded_lie(sa in seeds(), sb in seeds(), sc in seeds(), da in 0i32..2, db in 0i32..2, dc in 0i32..2) {
        let s = space(&[-1, 0]);
        let f = random_map(&s, Flavor::SymToSelf, da, &[1, 2], &sa);
        let g = random_map(&s, Flavor::SymToSelf, db, &[1, 2], &sb);
        let h = random_map(&s, Flavor::SymToSelf, dc, &[1], &sc);
        let br = |a: &GradedMap, b: &GradedMap| graded_nr_bracket(a, b).unwrap();
        let sgn = |k: i32| if k.rem_euclid(2) == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(br(&f, &g), br(&g, &f).scale(&-sgn(da * db)));
        let j = br(&f, &br(&g, &h));
        let k = br(&br(&f, &g), &h).add(&br(&g, &br(&f, &h)).scale(&sgn(da * db)));
        prop_assert_eq!(j, k);
    }

    #[test]
    fn mn_bracket_is_graded_lie(sa in seeds(), sb in seeds(), sc in seeds(), da in 0i32..2, db in 0i32..2, dc in 0i32..2) {
        let s = two_term_space();
        let f = random_map(&s, Flavor::SymTensorToSelf, da, &[1, 2], &sa);
        let g = random_map(&s, Flavor::SymTensorToSelf, db, &[1, 2], &sb);
        let h = random_map(&s, Flavor::SymTensorToSelf, dc, &[1], &sc);
        let br = |a: &GradedMap, b: &GradedMap| graded_mn_bracket(a, b).unwrap();
        let sgn = |k: i32| if k.rem_euclid(2) == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(br(&f, &g), br(&g, &f).scale(&-sgn(da * db)));
        let j = br(&f, &br(&g, &h));
        let k = br(&br(&f, &g), &h).add(&br(&g, &br(&f, &h)).scale(&sgn(da * db)));
        prop_assert_eq!(j, k);
    }

    #[test]
    fn random_maps_are_graded_symmetric(seed in seeds(), d in -1i32..2) {
        let s = space(&[-1, 0, 1]);
        let f = random_map(&s, Flavor::SymToSelf, d, &[1, 2, 3], &seed);
        prop_assert!(f.check_symmetry());
        prop_assert!(f.validate().is_ok());
    }

    #[test]
    fn twisting_routes_agree_for_strict_classical_operators(a in -2i64..3, b in -2i64..3) {
        // T = [[a, b], [0, 0]] on (aff(1), ad) is Rota-Baxter for every a, b
        let t = registry::mat2(a, b, 0, 0);
        let op = RelativeRbo::raw(registry::adjoint(registry::aff1()), t).unwrap();
        let h = desuspend_rbo(&op);
        let r = verify_homotopy_rbo(&h, None).unwrap();
        prop_assert_eq!(r.report.ok, op.verify().ok);
        if r.report.ok {
            let tw = twist_report(&h).unwrap();
            prop_assert!(tw.ok());
        }
    }
}

// ------------------------------------------------------- coderivation oracle

/// Coderivation of `Sym(V)` extending `f`, applied to a sorted basis key.
fn coderivation(f: &GradedMap, key: &[usize]) -> std::collections::BTreeMap<Vec<usize>, Scalar> {
    use crate::foundation::combinat::{koszul_sign, shuffles, sort_koszul};
    let s = f.space();
    let kd: Vec<i32> = key.iter().map(|&i| s.degree(i)).collect();
    let mut out = std::collections::BTreeMap::new();
    for i in 1..=key.len() {
        for sh in shuffles(&[i, key.len() - i]) {
            let inner: Vec<usize> = sh.perm[..i].iter().map(|&p| key[p]).collect();
            let val = f.eval_basis(&inner);
            let e = koszul_sign(&sh.perm, &kd);
            for (o, c) in val.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mut idx = vec![o];
                idx.extend(sh.perm[i..].iter().map(|&p| key[p]));
                if let Some((k, sg)) = sort_koszul(&idx, s.degrees()) {
                    let x = out.entry(k.to_vec()).or_insert_with(Scalar::zero);
                    *x += c * int((e * sg) as i64);
                }
            }
        }
    }
    out.retain(|_, v: &mut Scalar| !v.is_zero());
    out
}

fn apply_coder(f: &GradedMap, v: &std::collections::BTreeMap<Vec<usize>, Scalar>) -> std::collections::BTreeMap<Vec<usize>, Scalar> {
    let mut out = std::collections::BTreeMap::new();
    for (k, c) in v {
        for (k2, c2) in coderivation(f, k) {
            *out.entry(k2).or_insert_with(Scalar::zero) += c * &c2;
        }
    }
    out.retain(|_, v: &mut Scalar| !v.is_zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn nr_bracket_matches_coderivation_commutator(sa in seeds(), sb in seeds(), da in 0i32..2, db in 0i32..2) {
        let s = space(&[-1, 0]);
        let f = random_map(&s, Flavor::SymToSelf, da, &[1, 2], &sa);
        let g = random_map(&s, Flavor::SymToSelf, db, &[1, 2], &sb);
        let b = graded_nr_bracket(&f, &g).unwrap();
        let sgn = if (da * db) % 2 == 0 { int(1) } else { int(-1) };
        for n in 1..=3 {
            for key in crate::foundation::graded_sym_basis(n, s.degrees()) {
                let one: std::collections::BTreeMap<Vec<usize>, Scalar> = [(key.to_vec(), int(1))].into();
                let fg = apply_coder(&f, &apply_coder(&g, &one));
                let gf = apply_coder(&g, &apply_coder(&f, &one));
                let mut comm = fg;
                for (k, c) in gf {
                    *comm.entry(k).or_insert_with(Scalar::zero) -= &sgn * c;
                }
                let proj: Vec<Scalar> = (0..s.dim()).map(|o| comm.get(&vec![o]).cloned().unwrap_or_else(Scalar::zero)).collect();
                prop_assert_eq!(proj, b.eval_basis(&key), "key {:?}", key);
            }
        }
    }
}

#[test]
fn non_strict_operator_on_the_dg_example() {
    let op = aff1_dg_homotopy_rbo();
    assert!(!op.is_strict());
    assert_eq!(op.weight_bound(), 2);
    let r = verify_homotopy_rbo(&op, None).unwrap();
    assert!(r.report.ok && r.report.routes_agree && r.direct_ok && r.mc_ok);
    let full = verify_homotopy_rbo(&op, Some(op.certified_bound())).unwrap();
    assert!(full.report.ok);
    let tw = twist_report(&op).unwrap();
    assert!(tw.ok(), "{tw:?}");
    assert!(nilpotency_guard(&op));
    // dropping the weight-2 part breaks the equation
    let strict = HomotopyRbo::new(op.rep().clone(), op.t().component(1)).unwrap();
    assert!(!verify_homotopy_rbo(&strict, None).unwrap().report.ok);
}

use super::{CheckReport, RelativeRbo, Witness};
use crate::foundation::Matrix;

/// Morphism `(φ, ψ)` from `T': V' → g'` to `T: V → g`, with `φ: g' → g`
/// and `ψ: V' → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub phi: Matrix,
    pub psi: Matrix,
}

/// Checks `φ` is a Lie homomorphism, `T ∘ ψ = φ ∘ T'` and
/// `ψ(ρ'(x)u) = ρ(φx)(ψu)`.
pub fn verify_morphism(source: &RelativeRbo, target: &RelativeRbo, m: &Morphism) -> CheckReport {
    let (g1, g2) = (source.lie(), target.lie());
    let (dv1, dv2) = (source.rep().dim_v(), target.rep().dim_v());
    let shape_ok = m.phi.rows() == g2.dim()
        && m.phi.cols() == g1.dim()
        && m.psi.rows() == dv2
        && m.psi.cols() == dv1;
    if !shape_ok {
        return CheckReport {
            check: "morphism".into(),
            ok: false,
            witness: Some(Witness { inputs: vec!["shape".into()], defect: vec![] }),
            routes_agree: true,
        };
    }
    let fail = |inputs: Vec<String>, defect| CheckReport {
        check: "morphism".into(),
        ok: false,
        witness: Some(Witness { inputs, defect }),
        routes_agree: true,
    };
    let unit = |n: usize, i: usize| {
        let mut v = vec![num_traits::Zero::zero(); n];
        v[i] = num_traits::One::one();
        v
    };
    let nz = |v: &[crate::foundation::Scalar]| v.iter().any(|x| !num_traits::Zero::is_zero(x));
    for i in 0..g1.dim() {
        for j in i + 1..g1.dim() {
            let lhs = m.phi.mul_vec(&g1.mu().eval_basis(&[i, j]));
            let rhs = g2.bracket(&m.phi.column(i), &m.phi.column(j));
            let d: Vec<_> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if nz(&d) {
                return fail(vec![g1.labels()[i].clone(), g1.labels()[j].clone()], d);
            }
        }
    }
    let lhs = target.t().mul(&m.psi);
    let rhs = m.phi.mul(source.t());
    for a in 0..dv1 {
        let d: Vec<_> = lhs.column(a).iter().zip(rhs.column(a)).map(|(x, y)| x - y).collect();
        if nz(&d) {
            return fail(vec![source.rep().labels_v()[a].clone()], d);
        }
    }
    for i in 0..g1.dim() {
        let phx = m.phi.column(i);
        let mut rho_phx = Matrix::zeros(dv2, dv2);
        for (k, c) in phx.iter().enumerate() {
            rho_phx = rho_phx.add(&target.rep().rho()[k].scale(c));
        }
        for a in 0..dv1 {
            let u = unit(dv1, a);
            let lhs = m.psi.mul_vec(&source.rep().rho()[i].mul_vec(&u));
            let rhs = rho_phx.mul_vec(&m.psi.mul_vec(&u));
            let d: Vec<_> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
            if nz(&d) {
                return fail(vec![g1.labels()[i].clone(), source.rep().labels_v()[a].clone()], d);
            }
        }
    }
    CheckReport::pass("morphism")
}

use super::RelativeRbo;
use crate::foundation::scalar::frac;
use crate::linfty::{mc_value, BiggerLinfty, Shifted};
use crate::nrcore::{nr_bracket_unchecked, project_h, Cochain, NrAlgebra};

/// Maurer–Cartan verdict for `(s⁻¹π, T)` in the L∞-algebra on
/// `s⁻¹(⊕ C^{k|0}) ⊕ (⊕ Hom(∧V, g))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    /// The `s⁻¹L'` component vanishes: `(g, ρ)` is a Lie algebra with a
    /// representation.
    pub lie_rep_ok: bool,
    /// The `h` component vanishes: `T` satisfies the operator identity.
    pub operator_ok: bool,
    pub value: Shifted<Cochain>,
    /// The value equals `(−s⁻¹ ½[π,π], ½[[π,T],T])`.
    pub matches_closed_form: bool,
}

impl McReport {
    pub fn ok(&self) -> bool {
        self.lie_rep_ok && self.operator_ok
    }
}

/// The derived-bracket L∞-algebra with `Δ = 0` on `C*(g ⊕ V, g ⊕ V)`.
pub fn mc_algebra(split: crate::nrcore::Split) -> BiggerLinfty<NrAlgebra> {
    BiggerLinfty { alg: NrAlgebra { split }, project: Box::new(project_h), delta: None }
}

/// Evaluates `Σ (1/k!) l_k(α, ..., α)` for `α = (s⁻¹π, T)`; accepts
/// unverified data.
pub fn mc_check(op: &RelativeRbo) -> McReport {
    let split = op.rep().split();
    let alg = mc_algebra(split);
    let pi = op.rep().pi();
    let t = op.t_cochain();
    let alpha = Shifted { degree: 0, x: pi.clone(), a: t.clone() };
    let value = mc_value(&alg, &alpha, 4);
    let half = frac(1, 2);
    let pp = nr_bracket_unchecked(&pi, &pi).scale(&-half.clone());
    let ptt = nr_bracket_unchecked(&nr_bracket_unchecked(&pi, &t), &t).scale(&half);
    McReport {
        lie_rep_ok: value.x.is_zero(),
        operator_ok: value.a.is_zero(),
        matches_closed_form: value.x == pp && value.a == ptt,
        value,
    }
}

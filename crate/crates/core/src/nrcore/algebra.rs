use super::{nr_bracket_unchecked, Cochain, Split};
use crate::foundation::Scalar;
use crate::linfty::{GradedLie, GradedVector};

impl GradedVector for Cochain {
    fn degree(&self) -> i32 {
        Cochain::degree(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        Cochain::add_scaled(self, other, c)
    }
    fn is_zero(&self) -> bool {
        Cochain::is_zero(self)
    }
}

/// `(C*(g ⊕ V, g ⊕ V), [,]_NR)` as a graded Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NrAlgebra {
    pub split: Split,
}

impl GradedLie for NrAlgebra {
    type Elem = Cochain;
    fn zero(&self, degree: i32) -> Cochain {
        Cochain::zero_of_degree(self.split, degree)
    }
    fn bracket(&self, a: &Cochain, b: &Cochain) -> Cochain {
        nr_bracket_unchecked(a, b)
    }
}

/// Projection onto `⊕_{n≥0} C^{−1|n+1} = ⊕ Hom(∧^{n+1} V, g)`.
pub fn project_h(c: &Cochain) -> Cochain {
    let s = c.split();
    if c.arity().unwrap_or(0) == 0 {
        return Cochain::zero_of_degree(s, c.degree());
    }
    c.filter(|idx, o| s.is_g(o) && idx.iter().all(|&i| !s.is_g(i)))
}

/// Whether a cochain lies in `⊕_k C^{k|0}` (the Lie-and-representation part).
pub fn in_lie_rep_part(c: &Cochain) -> bool {
    c.bidegrees().iter().all(|&(_, l)| l == 0)
}

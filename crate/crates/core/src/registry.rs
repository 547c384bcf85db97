//! Built-in example structures.

use crate::bialgebra::{Polyvector, TriangularBialgebra};
use crate::foundation::{int, Matrix};
use crate::structures::{LieAlgebra, Rbo, RelativeRbo, Representation};

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n).with_labels(labels("e", n)).expect("label count")
}

/// `[e1, e2] = e2`.
pub fn aff1() -> LieAlgebra {
    LieAlgebra::from_constants(2, &[(0, 1, 1, int(1))])
        .and_then(|l| l.with_labels(labels("e", 2)))
        .and_then(LieAlgebra::verified)
        .expect("aff(1) is a Lie algebra")
}

/// `[e1, e2] = e3`.
pub fn heis3() -> LieAlgebra {
    LieAlgebra::from_constants(3, &[(0, 1, 2, int(1))])
        .and_then(|l| l.with_labels(labels("e", 3)))
        .and_then(LieAlgebra::verified)
        .expect("heis3 is a Lie algebra")
}

/// Basis `h, e, f`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_constants(3, &[(0, 1, 1, int(2)), (0, 2, 2, int(-2)), (1, 2, 0, int(1))])
        .and_then(|l| l.with_labels(vec!["h".into(), "e".into(), "f".into()]))
        .and_then(LieAlgebra::verified)
        .expect("sl2 is a Lie algebra")
}

/// `[e1,e2] = e3` perturbed by `[e1,e3] = e1`; fails Jacobi.
pub fn heis3_broken() -> LieAlgebra {
    LieAlgebra::from_constants(3, &[(0, 1, 2, int(1)), (0, 2, 0, int(1))])
        .and_then(|l| l.with_labels(labels("e", 3)))
        .expect("antisymmetric table")
}

pub fn mat2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
    Matrix::from_dense(2, 2, &[vec![int(a), int(b)], vec![int(c), int(d)]])
}

/// `T₀(e1) = e1`, `T₀(e2) = 0` on aff(1).
pub fn aff1_t0() -> Rbo {
    Rbo::new(aff1(), mat2(1, 0, 0, 0)).expect("T0 is Rota-Baxter")
}

/// A square-zero member of the family `d = −a, bc = −a²`:
/// `T = [[1, 1], [−1, −1]]`.
pub fn aff1_nilpotent() -> Rbo {
    Rbo::new(aff1(), mat2(1, 1, -1, -1)).expect("family member is Rota-Baxter")
}

/// `(aff(1), ad, T₀)` as a relative operator.
pub fn aff1_t0_relative() -> RelativeRbo {
    aff1_t0().as_relative()
}

pub fn adjoint(lie: LieAlgebra) -> Representation {
    Representation::adjoint(lie)
}

/// `r = h∧e` on sl(2).
pub fn sl2_r_he() -> TriangularBialgebra {
    TriangularBialgebra::new(sl2(), Polyvector::basis(3, &[0, 1])).expect("h^e is an r-matrix")
}

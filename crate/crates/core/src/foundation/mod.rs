//! Exact arithmetic, sign combinatorics and linear algebra over the rationals.

pub mod combinat;
pub mod linalg;
pub mod par;
pub mod scalar;

pub use combinat::{
    exterior_basis, exterior_rank, graded_sym_basis, koszul_sign, multinomial, permutation_sign,
    shuffles, sort_koszul, sort_with_sign, MultiIndex,
};
pub use linalg::Matrix;
pub use par::Strategy;
pub use scalar::{format_scalar, frac, int, parse_scalar, Scalar, ScalarParseError};

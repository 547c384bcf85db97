//! Dual numbers `a + b t` with `t² = 0`.

use crate::foundation::Scalar;
use crate::structures::direct::{Ring, Tables};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Dual {
    pub a: Scalar,
    pub b: Scalar,
}

impl Dual {
    pub fn new(a: Scalar, b: Scalar) -> Self {
        Dual { a, b }
    }
}

impl Ring for Dual {
    fn zero() -> Self {
        Dual::default()
    }
    fn from_scalar(s: &Scalar) -> Self {
        Dual { a: s.clone(), b: Scalar::default() }
    }
    fn add(&self, o: &Self) -> Self {
        Dual { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual { a: &self.a * &o.a, b: &self.a * &o.b + &self.b * &o.a }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
}

/// `base + t · first` entrywise.
pub fn dual_tables(base: &Tables<Scalar>, first: &Tables<Scalar>) -> Tables<Dual> {
    let zip = |x: &[Scalar], y: &[Scalar]| -> Vec<Dual> {
        x.iter().zip(y).map(|(a, b)| Dual::new(a.clone(), b.clone())).collect()
    };
    Tables {
        dg: base.dg,
        dv: base.dv,
        mu: zip(&base.mu, &first.mu),
        rho: zip(&base.rho, &first.rho),
        t: zip(&base.t, &first.t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::int;

    #[test]
    fn t_squares_to_zero() {
        let t = Dual::new(int(0), int(1));
        assert!(t.mul(&t).is_zero());
        let x = Dual::new(int(2), int(3));
        let y = Dual::new(int(-1), int(5));
        assert_eq!(x.mul(&y), Dual::new(int(-2), int(7)));
    }
}

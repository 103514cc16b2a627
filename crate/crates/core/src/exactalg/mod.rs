//! The exact arithmetic tower: rationals, polynomials in `x`, Laurent
//! polynomials in `q` over those, and cyclotomic quotients `Q(zeta_l)[x]`.
//!
//! Every type implements [`Ring`], which is what the determinant engines and
//! identity checks are generic over. All values are immutable; operations
//! return fresh values.

mod cyclo;
mod matrix;
mod qlaurent;
mod rational;
mod text;
mod xpoly;

pub use cyclo::{cyclotomic_degree, CycloElem, SUPPORTED_ORDERS};
pub use matrix::RingMatrix;
pub use qlaurent::QLaurent;
pub use rational::Rational;
pub use xpoly::XPoly;

use std::fmt::Debug;

use crate::error::AlgebraError;

/// A commutative ring with exact (remainder-checked) division.
///
/// `zero_like`/`one_like` exist because [`CycloElem`] carries its order at
/// runtime, so the neutral elements depend on the value they are built from.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Returns `q` with `self == q * rhs`, or an error carrying the remainder.
    fn exact_div(&self, rhs: &Self) -> Result<Self, AlgebraError>;

    fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Forwards `+ - * unary-`, by value and by reference, to the [`Ring`] methods.
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::exactalg::Ring::add(self, rhs)
            }
        }
        impl std::ops::Add<$t> for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::exactalg::Ring::add(&self, &rhs)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::exactalg::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Sub<$t> for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::exactalg::Ring::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::exactalg::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Mul<$t> for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::exactalg::Ring::mul(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactalg::Ring::neg(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactalg::Ring::neg(&self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;

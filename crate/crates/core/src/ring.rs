//! Coefficient-ring abstraction for series and polynomial arithmetic.
//!
//! Everything downstream is generic over [`Ring`] (exact, characteristic 0)
//! with the refinements [`Field`] (full division) and [`ToComplex`]
//! (embedding into f64 complex numbers for numeric evaluation).
//! Concrete instances: `Rat` (arbitrary-precision rationals), polynomials
//! and rational functions from [`crate::poly`], Eisenstein rationals from
//! [`crate::cyclotomic`], and `Complex64`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// Exact rationals; the base coefficient field everywhere.
pub type Rat = BigRational;

/// n as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// n/d as a `Rat`. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(n.into(), d.into())
}

/// Commutative ring with exact arithmetic and decidable equality.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Exact division where defined: `Some(q)` iff `q * rhs == self`.
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

/// Ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self> {
        Self::one().try_div(self)
    }

    /// Panicking division; use `try_div` when the denominator may vanish.
    fn div(&self, rhs: &Self) -> Self {
        self.try_div(rhs).expect("division by zero")
    }
}

/// Embedding into C for numeric evaluation of exact data.
pub trait ToComplex {
    fn to_c64(&self) -> Complex64;
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for Rat {}

impl ToComplex for Rat {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().expect("rational out of f64 range"), 0.0)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if Ring::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for Complex64 {}

impl ToComplex for Complex64 {
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_ring_basics() {
        let a = rat(2, 3);
        let b = rat(-1, 6);
        assert_eq!(Ring::add(&a, &b), rat(1, 2));
        assert_eq!(Ring::mul(&a, &b), rat(-1, 9));
        assert_eq!(Ring::sub(&a, &a), <Rat as Ring>::zero());
        assert_eq!(a.try_div(&b), Some(rat(-4, 1)));
        assert_eq!(a.try_div(&<Rat as Ring>::zero()), None);
        assert_eq!(Field::inv(&a), Some(rat(3, 2)));
    }

    #[test]
    fn characteristic_zero() {
        // n * 1 != 0 for a healthy range of n.
        for n in 1..=200i64 {
            assert!(!Ring::is_zero(&<Rat as Ring>::from_int(n)));
        }
    }
}

//! Coefficient traits shared by the polynomial, matrix and finite-group code.
//!
//! Everything in this crate is exact. [`Ring`] is the minimal surface the
//! sparse matrix code needs; [`Scalar`] adds field division and is what
//! polynomial coefficients must implement.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with 1 whose elements can be built from machine integers.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(n: i64) -> Self;

    /// Exact quotient by a nonzero integer, `None` when it does not exist.
    fn div_int(&self, k: i64) -> Option<Self>;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
}

/// A field of coefficients: exact rationals or a prime field.
pub trait Scalar: Ring + Eq + Display {
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u32;
}

impl Ring for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        (k != 0).then(|| self / BigRational::from_integer(BigInt::from(k)))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
}

impl Scalar for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u32 {
        0
    }
}

impl Ring for i64 {
    fn from_int(n: i64) -> Self {
        n
    }

    fn div_int(&self, k: i64) -> Option<Self> {
        (k != 0 && self % k == 0).then(|| self / k)
    }
}

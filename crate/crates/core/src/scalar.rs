//! Coefficient fields.
//!
//! Everything below the foliation layer is written against [`Field`], a thin
//! bundle of `num-traits` bounds. The exact rationals ([`Rat`](crate::Rat)) are
//! the authoritative instantiation; fixed-width rationals are handy for quick
//! experiments but panic on overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// A field with exact arithmetic.
pub trait Field:
    Clone + PartialEq + Eq + Hash + Debug + Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    /// Whether the value prints with a leading minus sign.
    fn sign_negative(&self) -> bool;

    /// Parse a decimal integer or `p/q` literal.
    fn parse_literal(s: &str) -> Option<Self> {
        Self::from_str_radix(s, 10).or_else(|_| Self::from_str_radix(&format!("{s}/1"), 10)).ok()
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the field")
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + Debug + Display + FromPrimitive + Send + Sync + 'static,
    Ratio<T>: FromPrimitive,
{
    fn sign_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Exact rational built from two machine integers.
pub fn ratio(num: i64, den: i64) -> Ratio<BigInt> {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

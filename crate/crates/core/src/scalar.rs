//! Ground-field abstraction.
//!
//! Every computation in this crate is written against [`Scalar`], a field of
//! characteristic zero. The intended instance is [`Rational`] (exact,
//! arbitrary precision); `f64` also satisfies the bound and is handy for quick
//! experiments, but only the rational instance gives exact identities.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

use crate::error::Error;

/// A field of characteristic zero.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}

/// Exact rationals in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `+1` or `-1`.
#[inline]
pub(crate) fn signed<S: Scalar>(negative: bool) -> S {
    if negative {
        -S::one()
    } else {
        S::one()
    }
}

/// `c` or `-c`.
#[inline]
pub(crate) fn apply_sign<S: Scalar>(negative: bool, c: S) -> S {
    if negative {
        -c
    } else {
        c
    }
}

pub(crate) fn from_usize<S: Scalar>(n: usize) -> S {
    S::from_usize(n).expect("usize is representable in a characteristic-zero field")
}

pub(crate) fn from_i64<S: Scalar>(n: i64) -> S {
    S::from_i64(n).expect("i64 is representable in a characteristic-zero field")
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::InvalidScalar(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

//! Exact integer scalars.
//!
//! Everything numeric in this crate is exact: integrality tests decide
//! whether a candidate survives, so floating point never appears. Code that
//! can run on machine integers is generic over [`ExactInt`] and uses checked
//! arithmetic, so a caller can try `i64` first and fall back to [`BigInt`]
//! when an operation reports overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// Converts between exact integer types; `None` if the value does not fit.
pub fn convert<S: ExactInt, T: ExactInt>(x: &S) -> Option<T> {
    match x.to_i64() {
        Some(v) => T::from_i64(v),
        None => T::from_i128(x.to_i128()?),
    }
}

pub fn to_big<T: ExactInt>(x: &T) -> BigInt {
    BigInt::from_i128(x.to_i128().expect("machine integers fit in i128")).expect("i128 fits in BigInt")
}

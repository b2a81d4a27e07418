//! Integer scalar abstraction.
//!
//! Every quantity in this crate is an exact integer or an exact ratio of
//! integers. Labels, coefficients and bounds are generic over [`Scalar`] so
//! the same code runs on `i64` (fast, overflow checked), `i128` and
//! `BigInt` (no overflow ceiling).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Gathers the traits needed for exact signed integer arithmetic.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

/// Converts a machine integer into `T`. Every supported scalar is at least
/// 64 bits wide, so this never fails for `i64` inputs.
pub(crate) fn lift<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar types are at least 64 bits wide")
}

//! Exact integer scalars.
//!
//! Smith normal form and the multivariate polynomial layer are written once
//! against [`Integer`] and instantiated at `i64` (the default everywhere),
//! `i128` (wide symbolic work) or any other checked integer type.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{
    CheckedAdd, CheckedMul, CheckedNeg, CheckedSub, FromPrimitive, One, Signed, Zero,
};

use crate::error::{Error, Result};

/// An exact, signed, overflow-checked integer ring.
pub trait Integer:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + CheckedNeg
    + num_integer::Integer
    + From<i32>
    + FromPrimitive
{
    fn to_i64(&self) -> Option<i64>;
}

impl Integer for i64 {
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
}

impl Integer for i128 {
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

pub(crate) fn add<C: Integer>(a: &C, b: &C, ctx: &'static str) -> Result<C> {
    a.checked_add(b).ok_or(Error::Overflow(ctx))
}

pub(crate) fn sub<C: Integer>(a: &C, b: &C, ctx: &'static str) -> Result<C> {
    a.checked_sub(b).ok_or(Error::Overflow(ctx))
}

pub(crate) fn mul<C: Integer>(a: &C, b: &C, ctx: &'static str) -> Result<C> {
    a.checked_mul(b).ok_or(Error::Overflow(ctx))
}

//! Generic floating-point scalar used throughout the solver.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the solver is generic over: `f32` or `f64`.
///
/// Everything in this crate is written against this trait; concrete
/// aliases for the `f64` instantiation live at the crate root.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn lit<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("literal representable in scalar type")
}

/// Converts a cell count or index into the working scalar type.
#[inline]
pub fn from_usize<S: Scalar>(n: usize) -> S {
    S::from_usize(n).expect("usize representable in scalar type")
}

/// Lossy view of a scalar as `f64`, used for error reporting.
#[inline]
pub fn to_f64<S: Scalar>(x: S) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

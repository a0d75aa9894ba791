//! Scalar abstraction for the numeric kernels.
//!
//! The evolutionary machinery in [`crate::kernel`] and the quality indicators
//! in [`crate::indicators`] operate on any IEEE float; this trait collects
//! the bounds they need. `f32` and `f64` are covered by the blanket impl.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the generic numeric kernels.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Default
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into `S`, panicking only if the value is not
/// representable (never the case for the small constants used internally).
#[inline]
pub(crate) fn lit<S: Scalar>(v: f64) -> S {
    S::from_f64(v).expect("constant representable in scalar type")
}

//! Floating-point scalar abstraction.
//!
//! All simulation and analysis math is generic over [`Scalar`] so the same
//! code runs in `f32` or `f64`. Concrete aliases for the common entry types
//! live at the crate root.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Convert an `f64` literal into the working scalar type.
#[inline]
pub fn lit<T: Scalar>(value: f64) -> T {
    T::from_f64(value).expect("f64 literal must convert to the scalar type")
}

/// Fractional part in `[0, 1)`, safe for slightly negative inputs.
#[inline]
pub fn frac<T: Scalar>(x: T) -> T {
    let f = x - x.floor();
    if f >= T::one() {
        T::zero()
    } else {
        f
    }
}

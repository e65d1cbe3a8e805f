//! Scalar abstractions shared by the floating-point layers.
//!
//! Integer work (sequences, correlation tables, the matrix recurrence) runs
//! on `i64` through [`crate::linalg::Mat3`], which only needs
//! [`num_traits::Num`]. Everything that takes square roots or finds roots of
//! polynomials is written against [`Real`], so it runs on `f32` and `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// A floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + Default + Debug + Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
///
/// Every `f64` literal is representable (possibly rounded) in `f32` and `f64`,
/// so the conversion never fails for the types that implement [`Real`].
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from(x).expect("f64 constant converts to Real")
}

/// Converts an integer-valued scalar into `T`.
#[inline]
pub fn real_of<T: Real, I: num_traits::ToPrimitive>(x: I) -> T {
    T::from(x).expect("integer converts to Real")
}

/// Machine epsilon of `T` scaled by `factor`.
#[inline]
pub fn eps<T: Real>(factor: f64) -> T {
    T::epsilon() * lit(factor)
}

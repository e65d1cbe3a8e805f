//! Autocorrelations of Rudin-Shapiro sequences, the integer matrix
//! recurrence behind them, norm bounds on products of `MA` and `MB`, and
//! joint spectral radius estimates for that pair.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the common choices.

pub mod autocorr;
pub mod error;
pub mod format;
pub mod jsr;
pub mod linalg;
pub mod matrec;
pub mod roots;
pub mod scalar;
pub mod seq;
pub mod specbounds;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Real;

/// Exact integer matrix.
pub type IntMat3 = linalg::Mat3<i64>;
/// Exact integer vector.
pub type IntVec3 = linalg::Vec3<i64>;
pub type RealMat3 = linalg::Mat3<f64>;
pub type RealVec3 = linalg::Vec3<f64>;
pub type Polytope = jsr::Polytope3<f64>;
pub type Family = jsr::MatrixFamily<f64>;
pub type Constants = specbounds::SpectralConstants<f64>;

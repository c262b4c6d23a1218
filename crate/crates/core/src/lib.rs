//! Zero-order Hankel transforms of even functions through Mellin–Barnes
//! contour integrals of a continued Taylor coefficient.
//!
//! Everything is generic over [`scalar::Real`] (`f32`, `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod acceptance;
pub mod asymptotics;
pub mod catalog;
pub mod error;
pub mod kernel;
pub mod mellin_barnes;
pub mod oracle;
pub mod quad;
pub mod scalar;
pub mod special;

pub use catalog::{Example, Params};
pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type CoefficientFn64 = catalog::CoefficientFn<f64>;
pub type ContourSpec64 = mellin_barnes::ContourSpec<f64>;
pub type ContourIntegral64 = mellin_barnes::ContourIntegral<f64>;
pub type TransformResult64 = mellin_barnes::TransformResult<f64>;
pub type GrowthProfile64 = mellin_barnes::GrowthProfile<f64>;
pub type SeriesResult64 = asymptotics::SeriesResult<f64>;
pub type DerivativeTable64 = asymptotics::DerivativeTable<f64>;
pub type RealResult64 = oracle::RealResult<f64>;
pub type Params64 = catalog::Params<f64>;
pub type CoefficientFn32 = catalog::CoefficientFn<f32>;
pub type TransformResult32 = mellin_barnes::TransformResult<f32>;

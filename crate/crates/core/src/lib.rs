#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cmat;
pub mod error;
pub mod exterior;
pub mod liealg;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod x7;

pub use error::Error;
pub use scalar::{ComplexScalar, Rational, RealScalar};

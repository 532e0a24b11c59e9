//! Paired operators `a P+ + b P-` on `L^2` of the unit circle, acting on
//! trigonometric polynomials.

pub mod cli;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod operators;
pub mod properties;
pub mod symbols;

pub use error::{Error, Result};
pub use operators::PairedSpec;
pub use symbols::{parse_symbol, CoeffVector, LaurentPoly};

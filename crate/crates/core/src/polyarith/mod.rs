//! Exact integer, rational and univariate polynomial arithmetic.

pub mod factor;
pub mod int;
pub mod poly;

pub use poly::{Degree, IntPoly, Poly, RatPoly};

//! Exact computer algebra for first-order differential operators on weighted
//! Bergman spaces of the unit ball `B^N` and the `2×2` matrix ball.

pub mod algebra;
pub mod classify;
pub mod diffop;
pub mod error;
pub mod euler;
pub mod expr;
pub mod lie;
pub mod metric;
pub mod sample;
pub mod selftest;

pub use algebra::{ComplexRational, MultiIndex, Polynomial, Rational};
pub use error::{Error, Result};

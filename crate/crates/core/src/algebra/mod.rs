//! Exact scalars, multi-indices and multivariate polynomials.

mod complex;
mod multi_index;
mod polynomial;
pub mod rational;

pub use complex::ComplexRational;
pub use multi_index::MultiIndex;
pub use polynomial::Polynomial;
pub use rational::Rational;

//! Index algebra, exact harmonic sums, iterated-integral words and certified
//! high-precision evaluation of multiple zeta values and polylogarithms.

pub mod algebra;
pub mod bigfloat;
pub mod error;
pub mod eval;
pub mod expr;
pub mod finite;
pub mod formal;
pub mod identities;
pub mod index;
pub mod poset;
pub mod rational;
pub mod series;
pub mod word;

pub use error::{Error, Result};
pub use formal::FormalSum;
pub use index::{ix, ArgumentedIndex, Part, Sign, SignedIndex};
pub use rational::Rational;

//! Exact arithmetic: Laurent polynomials, canonical rational functions and
//! binomial-denominator fractions.

pub mod binfrac;
pub mod gcd;
pub mod poly;
pub mod scalar;

pub use binfrac::BinomialFraction;
pub use poly::{Monomial, Poly};
pub use scalar::{ExactScalar, Generators};

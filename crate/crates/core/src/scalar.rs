//! The coefficient contract shared by exact and numeric backends.

use alloc::string::String;
use core::fmt::Debug;

use num_bigint::BigInt;

use crate::exact::{BinomialFraction, ExactScalar, Poly};
use crate::num::Complex;

/// Which arithmetic a scalar type carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Numeric,
}

/// Commutative-ring operations plus the residual queries series need.
///
/// Constructors take `&self` so that numeric values can inherit the working
/// precision of an existing operand.
pub trait Scalar: Clone + Debug {
    const BACKEND: Backend;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;

    /// Whether this value counts as zero: literal zero for exact backends,
    /// magnitude below `10^tol_exp10` for numeric ones.
    fn negligible(&self, tol_exp10: i32) -> bool;

    /// log10 of the magnitude; exact nonzero values report 0.
    fn log10_abs(&self) -> f64;

    /// Short human-readable rendering.
    fn render(&self) -> String;
}

impl Scalar for Complex {
    const BACKEND: Backend = Backend::Numeric;

    fn zero_like(&self) -> Self {
        Complex::zero(self.precision())
    }
    fn one_like(&self) -> Self {
        Complex::one(self.precision())
    }
    fn int_like(&self, v: i64) -> Self {
        Complex::from_i64(v, self.precision())
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn negligible(&self, tol_exp10: i32) -> bool {
        self.below(tol_exp10)
    }
    fn log10_abs(&self) -> f64 {
        Complex::log10_abs(self)
    }
    fn render(&self) -> String {
        self.to_decimal(12)
    }
}

impl Scalar for ExactScalar {
    const BACKEND: Backend = Backend::Exact;

    fn zero_like(&self) -> Self {
        ExactScalar::zero()
    }
    fn one_like(&self) -> Self {
        ExactScalar::one()
    }
    fn int_like(&self, v: i64) -> Self {
        ExactScalar::from_i64(v)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn negligible(&self, _tol_exp10: i32) -> bool {
        ExactScalar::is_zero(self)
    }
    fn log10_abs(&self) -> f64 {
        if ExactScalar::is_zero(self) {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    }
    fn render(&self) -> String {
        self.to_string_with(&["a", "b", "s", "x3", "x4", "x5"])
    }
}

impl Scalar for BinomialFraction {
    const BACKEND: Backend = Backend::Exact;

    fn zero_like(&self) -> Self {
        BinomialFraction::zero()
    }
    fn one_like(&self) -> Self {
        BinomialFraction::one()
    }
    fn int_like(&self, v: i64) -> Self {
        BinomialFraction::from_poly(Poly::constant(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        BinomialFraction::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn negligible(&self, _tol_exp10: i32) -> bool {
        BinomialFraction::is_zero(self)
    }
    fn log10_abs(&self) -> f64 {
        if BinomialFraction::is_zero(self) {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    }
    fn render(&self) -> String {
        self.to_exact().render()
    }
}

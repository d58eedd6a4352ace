//! Exact rational arithmetic: rationals, dense univariate polynomials,
//! rational functions, truncated Laurent series and small determinants.
//!
//! Everything here is variable-agnostic. Callers decide whether a [`PolyQ`]
//! is a polynomial in `z` or in `t = z^-2`; rendering takes the variable name
//! as an argument.

mod matrix;
mod poly;
mod rat;
mod ratfun;
mod series;

pub use matrix::{det_cofactor, Matrix4};
pub use poly::{Degree, PolyQ};
pub use rat::{parse_rat, rat, rat_bits, render_rat, Rat};
pub use ratfun::RatFunQ;
pub use series::SeriesQ;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation too short: result valid only below z^{order}, no certified term at or above z^{lowest}")]
    TruncationTooShort { order: i64, lowest: i64 },
    #[error("inexact division")]
    InexactDivision,
}

/// Minimal commutative-ring interface used by the determinant routines.
///
/// `div_exact` is only ever called when the quotient is known to exist
/// (Bareiss guarantees this for integral domains).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Result<Self, AlgebraError>;
}

impl Scalar for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Result<Self, AlgebraError> {
        if num_traits::Zero::is_zero(other) {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self / other)
    }
}

//! Exact arithmetic: big rationals, real quadratic fields, integer
//! polynomials with root isolation, sparse multivariate polynomials and
//! small rational linear algebra.

mod algebraic;
mod intpoly;
mod linalg;
mod multipoly;
mod quad;
mod rational;
mod scalar;

pub use algebraic::AlgebraicReal;
pub use intpoly::IntPoly;
pub use linalg::RatMatrix;
pub use multipoly::{Monomial, MultiPoly};
pub use quad::{quad_sign, QuadExt};
pub use rational::Rational;
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact number from {0:?}")]
    Parse(String),
    #[error("radicand {0} is not a square-free integer greater than one")]
    InvalidRadicand(u64),
    #[error("mixed radicands {0} and {1}")]
    RadicandMismatch(u64, u64),
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: Box<Rational>, hi: Box<Rational> },
    #[error("interval width must be positive")]
    NonPositiveWidth,
    #[error("interval does not isolate a single root")]
    NotIsolating,
    #[error("polynomial arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}

/// Default isolating-interval width, 10⁻¹².
pub fn default_width() -> Rational {
    Rational::new(1, 10i64.pow(12)).expect("nonzero")
}

/// Bisection root isolation; see [`IntPoly::isolate_root`].
pub fn isolate_root(
    p: &IntPoly,
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Result<(Rational, Rational), NumericError> {
    p.isolate_root(lo, hi, width)
}

pub fn mp_add(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, NumericError> {
    p.checked_add(q)
}

pub fn mp_sub(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, NumericError> {
    p.checked_sub(q)
}

pub fn mp_mul(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, NumericError> {
    p.checked_mul(q)
}

pub fn mp_eq(p: &MultiPoly, q: &MultiPoly) -> Result<bool, NumericError> {
    p.checked_eq(q)
}

pub fn mp_eval(p: &MultiPoly, point: &[Scalar]) -> Result<Scalar, NumericError> {
    p.eval(point)
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::is_square_free;
use super::{NumericError, Rational};

/// Element `a + b·√d` of the real quadratic field ℚ(√d).
///
/// `d` is a square-free integer greater than one. Arithmetic between
/// elements with different radicands is rejected.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuadRepr", into = "QuadRepr")]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

#[derive(Serialize, Deserialize)]
struct QuadRepr {
    a: Rational,
    b: Rational,
    d: u64,
}

impl TryFrom<QuadRepr> for QuadExt {
    type Error = NumericError;
    fn try_from(r: QuadRepr) -> Result<Self, Self::Error> {
        QuadExt::new(r.a, r.b, r.d)
    }
}

impl From<QuadExt> for QuadRepr {
    fn from(q: QuadExt) -> Self {
        QuadRepr { a: q.a, b: q.b, d: q.d }
    }
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self, NumericError> {
        if d < 2 || !is_square_free(d) {
            return Err(NumericError::InvalidRadicand(d));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn sqrt(d: u64) -> Result<Self, NumericError> {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b√d`.
    pub fn sign(&self) -> i32 {
        quad_sign(&self.a, &self.b, self.d)
    }

    fn check(&self, other: &QuadExt) -> Result<(), NumericError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(NumericError::RadicandMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<QuadExt, NumericError> {
        self.check(other)?;
        Ok(QuadExt { a: &self.a + &other.a, b: &self.b + &other.b, d: self.d })
    }

    pub fn checked_sub(&self, other: &QuadExt) -> Result<QuadExt, NumericError> {
        self.check(other)?;
        Ok(QuadExt { a: &self.a - &other.a, b: &self.b - &other.b, d: self.d })
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<QuadExt, NumericError> {
        self.check(other)?;
        let d = Rational::from(self.d as i64);
        Ok(QuadExt {
            a: &self.a * &other.a + &d * &(&self.b * &other.b),
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        })
    }

    /// Multiplicative inverse via the conjugate: `(a − b√d) / (a² − d b²)`.
    pub fn recip(&self) -> Result<QuadExt, NumericError> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(QuadExt { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d })
    }

    /// Field norm `a² − d b²`; nonzero for every nonzero element.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from(self.d as i64) * &self.b * &self.b
    }

    pub fn scale(&self, r: &Rational) -> QuadExt {
        QuadExt { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    pub fn add_rational(&self, r: &Rational) -> QuadExt {
        QuadExt { a: &self.a + r, b: self.b.clone(), d: self.d }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }
}

/// Sign of the real number `a + b√d`, decided by comparing `a²` with `d·b²`
/// whenever the two parts disagree in sign.
pub fn quad_sign(a: &Rational, b: &Rational, d: u64) -> i32 {
    let sa = a.signum();
    let sb = b.signum();
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = Rational::from(d as i64) * b * b;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{NumericError, QuadExt, Rational};

/// An exact real number: a rational or an element of some ℚ(√d).
///
/// Values are kept normalized: a quadratic element whose surd part is zero
/// collapses to `Rat`, so derived equality is exact equality.
///
/// The `std::ops` impls panic when two irrational operands carry different
/// radicands; use the `checked_*` methods where that can happen.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadExt),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn sqrt(d: u64) -> Result<Self, NumericError> {
        Ok(Scalar::Quad(QuadExt::sqrt(d)?))
    }

    fn normalize(q: QuadExt) -> Scalar {
        if q.surd_part().is_zero() {
            Scalar::Rat(q.rational_part().clone())
        } else {
            Scalar::Quad(q)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Quad(_) => false,
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            Scalar::Rat(r) => r.signum(),
            Scalar::Quad(q) => q.sign(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Quad(q) => Some(q.radicand()),
        }
    }

    /// Splits `r + s·√d` into `(r, s)`; rationals have `s = 0`.
    pub fn components(&self) -> (Rational, Rational) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rational::zero()),
            Scalar::Quad(q) => (q.rational_part().clone(), q.surd_part().clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64(),
            Scalar::Quad(q) => q.to_f64(),
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(a), Scalar::Quad(b)) | (Scalar::Quad(b), Scalar::Rat(a)) => {
                Scalar::normalize(b.add_rational(a))
            }
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::normalize(a.checked_add(b)?),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        Ok(match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Quad(b)) | (Scalar::Quad(b), Scalar::Rat(a)) => Scalar::normalize(b.scale(a)),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::normalize(a.checked_mul(b)?),
        })
    }

    pub fn recip(&self) -> Result<Scalar, NumericError> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip()?)),
            Scalar::Quad(q) => Ok(Scalar::normalize(q.recip()?)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        self.checked_mul(&other.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.pow(exp as i64)),
            Scalar::Quad(_) => {
                let mut result = Scalar::one();
                let mut base = self.clone();
                let mut e = exp;
                while e > 0 {
                    if e & 1 == 1 {
                        result = &result * &base;
                    }
                    e >>= 1;
                    if e > 0 {
                        base = &base * &base;
                    }
                }
                result
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * r),
            Scalar::Quad(q) => Scalar::normalize(q.scale(r)),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(Rational::from(n))
    }
}

impl From<QuadExt> for Scalar {
    fn from(q: QuadExt) -> Self {
        Scalar::normalize(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = self.checked_sub(other).ok()?;
        Some(diff.sign().cmp(&0))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar arithmetic")
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

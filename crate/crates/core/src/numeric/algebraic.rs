use std::fmt;

use serde::{Deserialize, Serialize};

use super::{IntPoly, NumericError, Rational};

/// A real algebraic number given by a square-free integer polynomial and a
/// rational interval `(lo, hi]` containing exactly one of its roots.
///
/// Only the operations needed for exact zero and sign tests of integer
/// polynomials at the number are provided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraicReal {
    Rational(Rational),
    Root { poly: IntPoly, lo: Rational, hi: Rational },
}

impl AlgebraicReal {
    pub fn new(poly: &IntPoly, lo: Rational, hi: Rational) -> Result<Self, NumericError> {
        let sf = poly.squarefree_part();
        if lo >= hi {
            return Err(NumericError::NotIsolating);
        }
        let slo = sf.sign_at(&lo);
        let shi = sf.sign_at(&hi);
        if shi == 0 && sf.sturm_count(&lo, &hi) == 1 {
            return Ok(AlgebraicReal::Rational(hi));
        }
        if slo * shi >= 0 || sf.sturm_count(&lo, &hi) != 1 {
            return Err(NumericError::NotIsolating);
        }
        Ok(AlgebraicReal::Root { poly: sf, lo, hi })
    }

    pub fn interval(&self) -> (Rational, Rational) {
        match self {
            AlgebraicReal::Rational(r) => (r.clone(), r.clone()),
            AlgebraicReal::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (l, h) = self.interval();
        l.midpoint(&h).to_f64()
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if let AlgebraicReal::Root { poly, lo, hi } = self {
            let mid = lo.midpoint(hi);
            let sm = poly.sign_at(&mid);
            if sm == 0 {
                *self = AlgebraicReal::Rational(mid);
                return;
            }
            if sm == poly.sign_at(lo) {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    }

    /// Exact test `p(self) = 0`: the root is shared with `p` iff
    /// `gcd(poly, p)` vanishes somewhere in the isolating interval.
    pub fn is_root_of(&self, p: &IntPoly) -> bool {
        match self {
            AlgebraicReal::Rational(r) => p.eval(r).is_zero(),
            AlgebraicReal::Root { poly, lo, hi } => {
                if p.is_zero() {
                    return true;
                }
                let g = poly.gcd(p);
                g.degree().unwrap_or(0) > 0 && g.sturm_count(lo, hi) > 0
            }
        }
    }

    /// Exact sign of `p(self)`.
    pub fn sign_of(&self, p: &IntPoly) -> i32 {
        if self.is_root_of(p) {
            return 0;
        }
        let mut cur = self.clone();
        loop {
            match &cur {
                AlgebraicReal::Rational(r) => return p.sign_at(r),
                AlgebraicReal::Root { lo, hi, .. } => {
                    if p.sturm_count(lo, hi) == 0 {
                        return p.sign_at(hi);
                    }
                }
            }
            cur.refine();
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicReal::Rational(r) => write!(f, "{r}"),
            AlgebraicReal::Root { poly, lo, hi } => {
                write!(f, "root of {poly} in ({lo}, {hi}]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> AlgebraicReal {
        AlgebraicReal::new(&IntPoly::from_i64(&[-2, 0, 1]), Rational::from(1), Rational::from(2)).unwrap()
    }

    #[test]
    fn zero_tests() {
        let s = sqrt2();
        assert!(s.is_root_of(&IntPoly::from_i64(&[-2, 0, 1])));
        // (x^2 - 2)(x + 5)
        assert!(s.is_root_of(&IntPoly::from_i64(&[-10, -2, 5, 1])));
        // x^2 + 2 shares no root
        assert!(!s.is_root_of(&IntPoly::from_i64(&[2, 0, 1])));
        // x + sqrt2 factor is -sqrt2: x^2-2 times nothing, but gcd root outside interval
        let neg = AlgebraicReal::new(&IntPoly::from_i64(&[-2, 0, 1]), Rational::from(-2), Rational::from(-1)).unwrap();
        assert!(!neg.is_root_of(&IntPoly::from_i64(&[-1, 1])));
    }

    #[test]
    fn signs() {
        let s = sqrt2();
        // sqrt2 - 1.41 > 0, sqrt2 - 1.42 < 0
        assert_eq!(s.sign_of(&IntPoly::from_i64(&[-141, 100])), 1);
        assert_eq!(s.sign_of(&IntPoly::from_i64(&[-142, 100])), -1);
        assert_eq!(s.sign_of(&IntPoly::from_i64(&[-2, 0, 1])), 0);
    }

    #[test]
    fn rejects_non_isolating_interval() {
        let p = IntPoly::from_i64(&[-6, 11, -6, 1]);
        assert!(AlgebraicReal::new(&p, Rational::from(0), Rational::from(4)).is_err());
        assert!(AlgebraicReal::new(&p, Rational::from(4), Rational::from(5)).is_err());
        let ok = AlgebraicReal::new(&p, Rational::frac(3, 2), Rational::frac(5, 2)).unwrap();
        assert!(ok.is_root_of(&IntPoly::from_i64(&[-2, 1])));
    }
}

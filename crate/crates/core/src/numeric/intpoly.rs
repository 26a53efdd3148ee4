use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::gcd_big;
use super::{NumericError, Rational};

/// Univariate polynomial with arbitrary-precision integer coefficients;
/// `coeffs[i]` multiplies `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(from = "Vec<BigIntStr>", into = "Vec<BigIntStr>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Integer serialized as a decimal string.
#[derive(Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub(crate) struct BigIntStr(#[serde(with = "bigint_str")] pub BigInt);

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Vec<BigIntStr>> for IntPoly {
    fn from(v: Vec<BigIntStr>) -> Self {
        IntPoly::new(v.into_iter().map(|b| b.0).collect())
    }
}

impl From<IntPoly> for Vec<BigIntStr> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.into_iter().map(BigIntStr).collect()
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// `c · x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        IntPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over a common denominator keeps the work in integers.
        let n = x.numer();
        let d = x.denom();
        if self.is_zero() {
            return Rational::zero();
        }
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = Σ c_i n^i d^(deg-i), and dpow = d^(deg+1)
        let denom = dpow / d;
        Rational::new(acc, denom).expect("nonzero denominator")
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        self.eval(x).signum()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial with content removed and positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| gcd_big(&g, c));
        if g.is_zero() {
            return IntPoly::zero();
        }
        let sign = if self.leading().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
        let g = g * sign;
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    fn from_rat(p: &RatPoly) -> IntPoly {
        // clear denominators, then strip content
        let lcm = p.0.iter().fold(BigInt::one(), |l, c| num_integer::lcm(l, c.denom().clone()));
        IntPoly::new(
            p.0.iter()
                .map(|c| {
                    let scaled = c * &Rational::from(lcm.clone());
                    scaled.numer().clone()
                })
                .collect(),
        )
        .primitive()
    }

    /// Primitive greatest common divisor over ℚ[x].
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        IntPoly::from_rat(&self.to_rat().gcd(&other.to_rat()))
    }

    /// Whether `self` divides `other` in ℚ[x].
    pub fn divides(&self, other: &IntPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.to_rat().rem(&self.to_rat()).is_zero()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.to_rat().gcd(&self.derivative().to_rat());
        let (q, _) = self.to_rat().div_rem(&g);
        IntPoly::from_rat(&q)
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`,
    /// by counting sign variations of the Sturm sequence.
    pub fn sturm_count(&self, lo: &Rational, hi: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.to_rat().sturm_sequence();
        let v = |x: &Rational| sign_variations(seq.iter().map(|p| p.eval(x).signum()));
        v(lo).saturating_sub(v(hi))
    }

    /// Bisection on `[lo, hi]` with exact rational evaluation.
    ///
    /// Requires `p(lo)·p(hi) < 0` and a single root inside the bracket.
    /// Returns `[l, h]` with `h − l ≤ width` and `p(l)·p(h) < 0`.
    pub fn isolate_root(
        &self,
        lo: &Rational,
        hi: &Rational,
        width: &Rational,
    ) -> Result<(Rational, Rational), NumericError> {
        if width.signum() <= 0 {
            return Err(NumericError::NonPositiveWidth);
        }
        let (mut l, mut h) = if lo <= hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
        let sl = self.sign_at(&l);
        let sh = self.sign_at(&h);
        if sl * sh >= 0 {
            return Err(NumericError::NoSignChange { lo: Box::new(l), hi: Box::new(h) });
        }
        while &h - &l > *width {
            let mid = l.midpoint(&h);
            let sm = self.sign_at(&mid);
            if sm == 0 {
                // exact root: shrink symmetrically around it, staying inside the bracket
                let half = width * &Rational::frac(1, 2);
                let nl = std::cmp::max(l, &mid - &half);
                let nh = std::cmp::min(h, &mid + &half);
                return Ok((nl, nh));
            }
            if sm == sl {
                l = mid;
            } else {
                h = mid;
            }
        }
        Ok((l, h))
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Rational-coefficient polynomial used for Euclidean remainders.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<Rational>);

impl RatPoly {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        RatPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn monic(&self) -> RatPoly {
        match self.0.last() {
            Some(l) => {
                let inv = l.recip().expect("nonzero leading coefficient");
                RatPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead_inv = d.0[dd].recip().expect("nonzero leading coefficient");
        if r.len() < d.0.len() {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (k, dk) in d.0.iter().enumerate() {
                let t = &c * dk;
                r[i + k] -= &t;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> RatPoly {
        RatPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * &Rational::from(i as i64)).collect())
    }

    fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the signs intact and the numbers small
            let lead = r.0.last().expect("nonzero").abs();
            let scaled = RatPoly(r.0.iter().map(|c| -(c / &lead)).collect());
            seq.push(scaled);
        }
        seq
    }
}

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly::bigint_str;
use super::{NumericError, Scalar};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographic on the exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with integer coefficients over a fixed
/// number of variables. Zero coefficients are never stored, so structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "t"];

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        MultiPoly::term(arity, c, vec![0; arity])
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, 1)
    }

    /// `c · Π var_i^exps[i]`
    pub fn term(arity: usize, c: impl Into<BigInt>, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), arity, "exponent vector arity");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        MultiPoly { arity, terms }
    }

    /// The variable with index `i` raised to `e`.
    pub fn var_pow(arity: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = e;
        MultiPoly::term(arity, 1, exps)
    }

    pub fn var(arity: usize, i: usize) -> Self {
        MultiPoly::var_pow(arity, i, 1)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial(vec![0; self.arity])).cloned().unwrap_or_default()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn check(&self, other: &MultiPoly) -> Result<(), NumericError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(NumericError::ArityMismatch { left: self.arity, right: other.arity })
        }
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, NumericError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            MultiPoly::insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(MultiPoly { arity: self.arity, terms })
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, NumericError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, NumericError> {
        self.check(other)?;
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *acc.entry(exps).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect();
        Ok(MultiPoly { arity: self.arity, terms })
    }

    /// Exact equality after canonicalization.
    pub fn checked_eq(&self, other: &MultiPoly) -> Result<bool, NumericError> {
        self.check(other)?;
        Ok(self.terms == other.terms)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of polynomials of equal arity; cheaper than repeated `+`.
    pub fn sum<'a>(arity: usize, parts: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
        let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for p in parts {
            assert_eq!(p.arity, arity, "arity mismatch in sum");
            for (m, c) in &p.terms {
                *acc.entry(m.0.clone()).or_default() += c;
            }
        }
        MultiPoly {
            arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect(),
        }
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.swap(i, j);
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly { arity: self.arity, terms }
    }

    /// Exact evaluation by term summation over precomputed powers.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, NumericError> {
        if point.len() != self.arity {
            return Err(NumericError::ArityMismatch { left: self.arity, right: point.len() });
        }
        let mut max_exp = vec![0u32; self.arity];
        for m in self.terms.keys() {
            for (mx, e) in max_exp.iter_mut().zip(&m.0) {
                *mx = (*mx).max(*e);
            }
        }
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(self.arity);
        for (v, &mx) in point.iter().zip(&max_exp) {
            let mut row = Vec::with_capacity(mx as usize + 1);
            row.push(Scalar::one());
            for k in 1..=mx as usize {
                let next = row[k - 1].checked_mul(v)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = Scalar::from(super::Rational::from(c.clone()));
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.checked_mul(&powers[i][e as usize])?;
                }
            }
            total = total.checked_add(&t)?;
        }
        Ok(total)
    }

    fn var_name(&self, i: usize) -> String {
        if self.arity <= VAR_NAMES.len() {
            VAR_NAMES[i].to_string()
        } else {
            format!("v{i}")
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest grlex term first
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { self.var_name(i) } else { format!("{}^{e}", self.var_name(i)) })
                    .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    #[serde(with = "bigint_str")]
    coef: BigInt,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermRepr { exps: m.0.clone(), coef: c.clone() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    /// The arity is taken from the first term; an empty list is the zero
    /// polynomial in zero variables.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermRepr>::deserialize(deserializer)?;
        let arity = raw.first().map_or(0, |t| t.exps.len());
        let mut terms = BTreeMap::new();
        for t in raw {
            if t.exps.len() != arity {
                return Err(serde::de::Error::custom("inconsistent exponent arity"));
            }
            MultiPoly::insert_term(&mut terms, Monomial(t.exps), t.coef);
        }
        Ok(MultiPoly { arity, terms })
    }
}

macro_rules! mp_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            /// Panics on arity mismatch.
            fn $method(self, rhs: &'a MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("multipoly arity")
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$checked(&rhs).expect("multipoly arity")
            }
        }
    };
}

mp_binop!(Add, add, checked_add);
mp_binop!(Sub, sub, checked_sub);
mp_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { arity: self.arity, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

//! Three-point supports, the four-parameter offset description of a joint
//! pmf with uniform marginals, the geometric-support change of variables,
//! and validated joint tables.
//!
//! Tables are stored with rows indexed by the value of `Y` and columns by
//! the value of `X`; with offsets `(x₁, x₂, x₃, x₄)` the entries are
//!
//! ```text
//!          X=a             X=b             X=c
//! Y=a   1/9 + x₄        1/9 + x₃        1/9 − x₃ − x₄
//! Y=b   1/9 + x₂        1/9 + x₁        1/9 − x₁ − x₂
//! Y=c   1/9 − x₂ − x₄   1/9 − x₁ − x₃   1/9 + x₁ + x₂ + x₃ + x₄
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{NumericError, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("table entry (row {row}, column {col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("offset vector is zero")]
    ZeroVector,
    #[error("table marginals are not uniform")]
    MarginalMismatch,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupportKind {
    /// `0 < s₁ < s₂ < s₃`
    PositiveOrdered,
    /// `{−α, 0, α}`
    SymmetricZero,
    GeneralOrdered,
}

/// Ordered support `s₁ < s₂ < s₃` of a uniform three-point marginal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SupportRepr", into = "SupportRepr")]
pub struct Support3 {
    points: [Rational; 3],
    kind: SupportKind,
}

#[derive(Serialize, Deserialize)]
struct SupportRepr {
    points: [Rational; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<SupportKind>,
}

impl TryFrom<SupportRepr> for Support3 {
    type Error = ModelError;
    fn try_from(r: SupportRepr) -> Result<Self, ModelError> {
        match r.kind {
            Some(kind) => Support3::with_kind(r.points, kind),
            None => Support3::new(r.points),
        }
    }
}

impl From<Support3> for SupportRepr {
    fn from(s: Support3) -> Self {
        SupportRepr { points: s.points, kind: Some(s.kind) }
    }
}

impl Support3 {
    /// Validates the ordering and infers the most specific kind.
    pub fn new(points: [Rational; 3]) -> Result<Self, ModelError> {
        let kind = if points[0].signum() > 0 {
            SupportKind::PositiveOrdered
        } else if points[1].is_zero() && points[0] == -&points[2] {
            SupportKind::SymmetricZero
        } else {
            SupportKind::GeneralOrdered
        };
        Support3::with_kind(points, kind)
    }

    pub fn with_kind(points: [Rational; 3], kind: SupportKind) -> Result<Self, ModelError> {
        if !(points[0] < points[1] && points[1] < points[2]) {
            return Err(ModelError::InvalidSupport(format!(
                "points must be strictly increasing, got {}, {}, {}",
                points[0], points[1], points[2]
            )));
        }
        match kind {
            SupportKind::PositiveOrdered if points[0].signum() <= 0 => {
                return Err(ModelError::InvalidSupport("positive support needs s1 > 0".into()))
            }
            SupportKind::SymmetricZero if !(points[1].is_zero() && points[0] == -&points[2]) => {
                return Err(ModelError::InvalidSupport("symmetric support must be {-a, 0, a}".into()))
            }
            _ => {}
        }
        Ok(Support3 { points, kind })
    }

    pub fn positive(a: Rational, b: Rational, c: Rational) -> Result<Self, ModelError> {
        Support3::with_kind([a, b, c], SupportKind::PositiveOrdered)
    }

    pub fn symmetric(alpha: Rational) -> Result<Self, ModelError> {
        Support3::with_kind([-&alpha, Rational::zero(), alpha], SupportKind::SymmetricZero)
    }

    /// Shorthand for small integer supports such as `{1, 2, 3}`.
    pub fn ints(a: i64, b: i64, c: i64) -> Result<Self, ModelError> {
        Support3::new([a.into(), b.into(), c.into()])
    }

    pub fn points(&self) -> &[Rational; 3] {
        &self.points
    }

    pub fn kind(&self) -> SupportKind {
        self.kind
    }

    /// `E[S^j]` under the uniform distribution.
    pub fn marginal_moment(&self, j: u32) -> Rational {
        let s: Rational = self.points.iter().map(|p| p.pow(j as i64)).sum();
        s * Rational::frac(1, 3)
    }

    /// Recognizes supports of the form `(α, αβ, αβ²)` with `β > 1`.
    pub fn beta_form(&self) -> Option<BetaSupport> {
        if self.kind != SupportKind::PositiveOrdered {
            return None;
        }
        let [a, b, c] = &self.points;
        let beta = b / a;
        if c / b == beta {
            BetaSupport::new(a.clone(), beta).ok()
        } else {
            None
        }
    }
}

impl fmt::Display for Support3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.points[0], self.points[1], self.points[2])
    }
}

/// Geometric support `(α, αβ, αβ²)`, for which `A_j = 1 + β^{−j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BetaSupport {
    alpha: Rational,
    beta: Rational,
}

impl BetaSupport {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, ModelError> {
        if alpha.signum() <= 0 {
            return Err(ModelError::InvalidSupport("alpha must be positive".into()));
        }
        if beta <= Rational::one() {
            return Err(ModelError::InvalidSupport("beta must exceed 1".into()));
        }
        Ok(BetaSupport { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn support(&self) -> Support3 {
        let b = &self.alpha * &self.beta;
        let c = &b * &self.beta;
        Support3::positive(self.alpha.clone(), b, c).expect("beta > 1 gives an ordered positive support")
    }

    pub fn a_j(&self, j: u32) -> Rational {
        Rational::one() + self.beta.pow(-(j as i64))
    }
}

/// Rational and surd parts of an offset vector, with the common radicand.
pub type SplitOffsets = ([Rational; 4], [Rational; 4], Option<u64>);

/// Deviation `(x₁, x₂, x₃, x₄)` of a joint pmf from the independence table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OffsetVector {
    pub x: [Scalar; 4],
}

impl OffsetVector {
    pub fn new(x: [Scalar; 4]) -> Self {
        OffsetVector { x }
    }

    pub fn from_rationals(x: [Rational; 4]) -> Self {
        OffsetVector { x: x.map(Scalar::from) }
    }

    pub fn ints(x: [i64; 4]) -> Self {
        OffsetVector { x: x.map(Scalar::from) }
    }

    pub fn zero() -> Self {
        OffsetVector::ints([0; 4])
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(Scalar::is_zero)
    }

    /// The offsets of the transposed table: `x₂ ↔ x₃`.
    pub fn transposed(&self) -> OffsetVector {
        let [x1, x2, x3, x4] = self.x.clone();
        OffsetVector { x: [x1, x3, x2, x4] }
    }

    pub fn scaled(&self, s: &Scalar) -> Result<OffsetVector, NumericError> {
        let [a, b, c, d] = &self.x;
        Ok(OffsetVector { x: [a.checked_mul(s)?, b.checked_mul(s)?, c.checked_mul(s)?, d.checked_mul(s)?] })
    }

    /// The nine deviations from 1/9, rows indexed by `Y`, columns by `X`.
    pub fn deviations(&self) -> Result<[[Scalar; 3]; 3], NumericError> {
        let [x1, x2, x3, x4] = &self.x;
        let n = |v: &Scalar| -v;
        Ok([
            [x4.clone(), x3.clone(), n(&x3.checked_add(x4)?)],
            [x2.clone(), x1.clone(), n(&x1.checked_add(x2)?)],
            [n(&x2.checked_add(x4)?), n(&x1.checked_add(x3)?), x1.checked_add(x2)?.checked_add(x3)?.checked_add(x4)?],
        ])
    }

    /// `(r, s)` with `x = r + √d·s` componentwise and `d` the common
    /// radicand (if any).
    pub fn split_components(&self) -> Result<SplitOffsets, NumericError> {
        let mut d: Option<u64> = None;
        for v in &self.x {
            if let Some(r) = v.radicand() {
                match d {
                    None => d = Some(r),
                    Some(prev) if prev != r => return Err(NumericError::RadicandMismatch(prev, r)),
                    _ => {}
                }
            }
        }
        let parts = self.x.clone().map(|v| v.components());
        let r = parts.clone().map(|p| p.0);
        let s = parts.map(|p| p.1);
        Ok((r, s, d))
    }
}

impl fmt::Display for OffsetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.x[0], self.x[1], self.x[2], self.x[3])
    }
}

/// Offsets after the change of variables used for geometric supports:
/// `y₁ = x₄, y₂ = x₃ + x₄, y₃ = x₂ + x₄, y₄ = x₁ + x₂ + x₃ + x₄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YVector {
    pub y: [Scalar; 4],
}

impl YVector {
    pub fn new(y: [Scalar; 4]) -> Self {
        YVector { y }
    }

    pub fn is_zero(&self) -> bool {
        self.y.iter().all(Scalar::is_zero)
    }
}

pub fn to_y(x: &OffsetVector) -> YVector {
    let [x1, x2, x3, x4] = &x.x;
    YVector { y: [x4.clone(), x3 + x4, x2 + x4, &(&(x1 + x2) + x3) + x4] }
}

pub fn from_y(y: &YVector) -> OffsetVector {
    let [y1, y2, y3, y4] = &y.y;
    OffsetVector { x: [&(&(y4 - y2) - y3) + y1, y3 - y1, y2 - y1, y1.clone()] }
}

/// Scales a nonzero offset vector by `λ = (1/9) / (2M)`, `M` the largest
/// absolute deviation, so every induced table entry lies in `[1/18, 1/6]`.
pub fn rescale(x: &OffsetVector) -> Result<OffsetVector, ModelError> {
    if x.is_zero() {
        return Err(ModelError::ZeroVector);
    }
    let devs = x.deviations()?;
    let mut max = Scalar::zero();
    for v in devs.iter().flatten() {
        let a = v.abs();
        if a.partial_cmp(&max).ok_or(NumericError::RadicandMismatch(0, 0))?.is_gt() {
            max = a;
        }
    }
    let lambda = Scalar::from(Rational::frac(1, 18)).checked_div(&max)?;
    Ok(x.scaled(&lambda)?)
}

/// Joint pmf of `(X, Y)` with `entries[r][c] = P(Y = sy[r], X = sx[c])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct JointTable {
    entries: [[Scalar; 3]; 3],
    support_x: Support3,
    support_y: Support3,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    entries: [[Scalar; 3]; 3],
    support_x: Support3,
    support_y: Support3,
}

impl TryFrom<TableRepr> for JointTable {
    type Error = ModelError;
    fn try_from(r: TableRepr) -> Result<Self, ModelError> {
        JointTable::new(r.entries, r.support_x, r.support_y)
    }
}

impl From<JointTable> for TableRepr {
    fn from(t: JointTable) -> Self {
        TableRepr { entries: t.entries, support_x: t.support_x, support_y: t.support_y }
    }
}

impl JointTable {
    /// Validates non-negativity and uniform marginals.
    pub fn new(entries: [[Scalar; 3]; 3], support_x: Support3, support_y: Support3) -> Result<Self, ModelError> {
        for (r, row) in entries.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if v.sign() < 0 {
                    return Err(ModelError::NegativeEntry { row: r, col: c });
                }
            }
        }
        let third = Scalar::from(Rational::frac(1, 3));
        for i in 0..3 {
            let row: Scalar = entries[i].iter().cloned().sum();
            let col: Scalar = (0..3).map(|r| entries[r][i].clone()).sum();
            if row != third || col != third {
                return Err(ModelError::MarginalMismatch);
            }
        }
        Ok(JointTable { entries, support_x, support_y })
    }

    pub fn from_offsets(x: &OffsetVector, support_x: Support3, support_y: Support3) -> Result<Self, ModelError> {
        let ninth = Scalar::from(Rational::frac(1, 9));
        let devs = x.deviations()?;
        let mut entries: [[Scalar; 3]; 3] = Default::default();
        for r in 0..3 {
            for c in 0..3 {
                let v = ninth.checked_add(&devs[r][c])?;
                if v.sign() < 0 {
                    return Err(ModelError::NegativeEntry { row: r, col: c });
                }
                entries[r][c] = v;
            }
        }
        JointTable::new(entries, support_x, support_y)
    }

    pub fn independent(support_x: Support3, support_y: Support3) -> Self {
        JointTable::from_offsets(&OffsetVector::zero(), support_x, support_y).expect("independence table is valid")
    }

    pub fn entries(&self) -> &[[Scalar; 3]; 3] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row][col]
    }

    pub fn support_x(&self) -> &Support3 {
        &self.support_x
    }

    pub fn support_y(&self) -> &Support3 {
        &self.support_y
    }

    /// Offsets recovered from the entries (inverse of `from_offsets`).
    pub fn offsets(&self) -> OffsetVector {
        let ninth = Scalar::from(Rational::frac(1, 9));
        let e = &self.entries;
        OffsetVector::new([&e[1][1] - &ninth, &e[1][0] - &ninth, &e[0][1] - &ninth, &e[0][0] - &ninth])
    }

    /// Table of `(Y, X)`.
    pub fn transposed(&self) -> JointTable {
        let mut entries: [[Scalar; 3]; 3] = Default::default();
        for r in 0..3 {
            for c in 0..3 {
                entries[r][c] = self.entries[c][r].clone();
            }
        }
        JointTable { entries, support_x: self.support_y.clone(), support_y: self.support_x.clone() }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

/// Convenience wrapper matching the operation name used in reports.
pub fn table_from_offsets(x: &OffsetVector, sx: &Support3, sy: &Support3) -> Result<JointTable, ModelError> {
    JointTable::from_offsets(x, sx.clone(), sy.clone())
}

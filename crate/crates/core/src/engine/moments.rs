use crate::model::{JointTable, OffsetVector, YVector};
use crate::numeric::{Rational, Scalar};

use super::{ASequence, EngineError};

/// `E[X^j Y^k]` of a joint table.
pub fn moment(t: &JointTable, j: u32, k: u32) -> Scalar {
    let sx = t.support_x().points();
    let sy = t.support_y().points();
    let mut total = Scalar::zero();
    for (r, row) in t.entries().iter().enumerate() {
        let yk = sy[r].pow(k as i64);
        for (c, p) in row.iter().enumerate() {
            let w = &sx[c].pow(j as i64) * &yk;
            total = total + p.scale(&w);
        }
    }
    total
}

/// `E[X^j Y^k] − E[X^j]·E[Y^k]`.
pub fn covariance(t: &JointTable, j: u32, k: u32) -> Scalar {
    let ex = t.support_x().marginal_moment(j);
    let ey = t.support_y().marginal_moment(k);
    moment(t, j, k) - Scalar::from(ex * ey)
}

/// Exact test of `E[X^j Y^k] = E[X^j]·E[Y^k]`.
pub fn is_uncorrelated(t: &JointTable, j: u32, k: u32) -> bool {
    covariance(t, j, k).is_zero()
}

/// Power tables for repeated covariance evaluation over a box.
pub(crate) struct TableMoments<'a> {
    table: &'a JointTable,
    px: Vec<[Rational; 3]>,
    py: Vec<[Rational; 3]>,
}

impl<'a> TableMoments<'a> {
    pub(crate) fn new(table: &'a JointTable, max_j: u32, max_k: u32) -> Self {
        fn powers(points: &[Rational; 3], n: u32) -> Vec<[Rational; 3]> {
            let mut out = vec![[Rational::one(), Rational::one(), Rational::one()]];
            for e in 1..=n as usize {
                let prev = &out[e - 1];
                let next = [&prev[0] * &points[0], &prev[1] * &points[1], &prev[2] * &points[2]];
                out.push(next);
            }
            out
        }
        TableMoments {
            table,
            px: powers(table.support_x().points(), max_j),
            py: powers(table.support_y().points(), max_k),
        }
    }

    pub(crate) fn covariance(&self, j: u32, k: u32) -> Scalar {
        let xj = &self.px[j as usize];
        let yk = &self.py[k as usize];
        let mut joint = Scalar::zero();
        for (r, row) in self.table.entries().iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                joint = joint + p.scale(&(&xj[c] * &yk[r]));
            }
        }
        let third = Rational::frac(1, 3);
        let ex: Rational = xj.iter().cloned().sum::<Rational>() * &third;
        let ey: Rational = yk.iter().cloned().sum::<Rational>() * &third;
        joint - Scalar::from(ex * ey)
    }
}

/// `x₁ + A_j x₂ + A_k x₃ + A_j A_k x₄`, which vanishes exactly when
/// `(j, k)` is in the uncorrelatedness set (positive supports, same
/// support for both marginals).
pub fn condition_lhs(x: &OffsetVector, seq: &ASequence, j: u32, k: u32) -> Result<Scalar, EngineError> {
    if j == 0 || k == 0 {
        return Err(EngineError::ZeroExponent);
    }
    let aj = seq.get(j);
    let ak = seq.get(k);
    let ajk = &aj * &ak;
    let [x1, x2, x3, x4] = &x.x;
    Ok(x1.checked_add(&x2.scale(&aj))?.checked_add(&x3.scale(&ak))?.checked_add(&x4.scale(&ajk))?)
}

/// `y₁ + β^j y₂ + β^k y₃ + β^{j+k} y₄` for a geometric support with ratio β.
pub fn y_condition_lhs(y: &YVector, beta: &Rational, j: u32, k: u32) -> Result<Scalar, EngineError> {
    let bj = beta.pow(j as i64);
    let bk = beta.pow(k as i64);
    let bjk = &bj * &bk;
    let [y1, y2, y3, y4] = &y.y;
    Ok(y1.checked_add(&y2.scale(&bj))?.checked_add(&y3.scale(&bk))?.checked_add(&y4.scale(&bjk))?)
}

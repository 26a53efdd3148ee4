use serde::{Deserialize, Serialize};

use crate::model::{from_y, rescale, BetaSupport, JointTable, OffsetVector, Support3, SupportKind, YVector};
use crate::numeric::{AlgebraicReal, IntPoly, Rational};

use super::moments::{condition_lhs, TableMoments};
use super::{box_points, ASequence, EngineError, Limits, Point};

/// A geometric-support witness whose ratio β is an irrational algebraic
/// number; the `y` components are integer polynomials in β.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicWitness {
    pub alpha: Rational,
    pub beta: AlgebraicReal,
    pub y: [IntPoly; 4],
}

impl AlgebraicWitness {
    /// `y₁ + β^j y₂ + β^k y₃ + β^{j+k} y₄` as a polynomial in β.
    pub fn lhs_poly(&self, j: u32, k: u32) -> IntPoly {
        let [y1, y2, y3, y4] = &self.y;
        let bj = IntPoly::monomial(1, j as usize);
        let bk = IntPoly::monomial(1, k as usize);
        let bjk = IntPoly::monomial(1, (j + k) as usize);
        &(&(y1 + &(&bj * y2)) + &(&bk * y3)) + &(&bjk * y4)
    }

    pub fn is_member(&self, j: u32, k: u32) -> bool {
        self.beta.is_root_of(&self.lhs_poly(j, k))
    }

    /// Offsets `x = from_y(y)` as polynomials in β.
    pub fn x_polys(&self) -> [IntPoly; 4] {
        let [y1, y2, y3, y4] = &self.y;
        [&(&(y4 - y2) - y3) + y1, y3 - y1, y2 - y1, y1.clone()]
    }

    /// The nine table deviations as polynomials in β, rows `Y`, columns `X`.
    pub fn deviation_polys(&self) -> [IntPoly; 9] {
        let [x1, x2, x3, x4] = self.x_polys();
        let s = &(&(&x1 + &x2) + &x3) + &x4;
        [x4.clone(), x3.clone(), -&(&x3 + &x4), x2.clone(), x1.clone(), -&(&x1 + &x2), -&(&x2 + &x4), -&(&x1 + &x3), s]
    }

    /// Exact check that the canonical rescaling yields a valid table over
    /// ℚ(β): with `M = max |dᵢ|` each entry `1/9 + dᵢ/(18M)` is
    /// nonnegative iff `2M + dᵢ ≥ 0`.
    pub fn table_is_valid(&self) -> bool {
        let devs = self.deviation_polys();
        let abs: Vec<IntPoly> = devs.iter().map(|d| if self.beta.sign_of(d) < 0 { -d } else { d.clone() }).collect();
        let mut max = abs[0].clone();
        for a in &abs[1..] {
            if self.beta.sign_of(&(a - &max)) > 0 {
                max = a.clone();
            }
        }
        if self.beta.sign_of(&max) == 0 {
            return false;
        }
        let two_m = &IntPoly::constant(2) * &max;
        devs.iter().all(|d| self.beta.sign_of(&(&two_m + d)) >= 0)
    }

    pub fn transposed(&self) -> AlgebraicWitness {
        let [y1, y2, y3, y4] = self.y.clone();
        AlgebraicWitness { alpha: self.alpha.clone(), beta: self.beta.clone(), y: [y1, y3, y2, y4] }
    }
}

/// Anything whose uncorrelatedness set can be enumerated.
///
/// JSON carries the support inline, e.g.
/// `{"form":"offsets","support":{"points":["1","2","3"]},"x":["0","1","-1","0"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Witness {
    /// Offsets on a common support for `X` and `Y`.
    Offsets {
        support: Support3,
        #[serde(flatten)]
        offsets: OffsetVector,
    },
    /// y-form offsets on a geometric support with rational ratio.
    Geometric {
        support: BetaSupport,
        #[serde(flatten)]
        y: YVector,
    },
    Algebraic(AlgebraicWitness),
    Table {
        table: JointTable,
    },
}

impl Witness {
    pub fn offsets(support: Support3, x: OffsetVector) -> Witness {
        Witness::Offsets { support, offsets: x }
    }

    pub fn geometric(support: BetaSupport, y: YVector) -> Witness {
        Witness::Geometric { support, y }
    }

    pub fn table(table: JointTable) -> Witness {
        Witness::Table { table }
    }

    /// The common support of `X` and `Y`, if there is one with rational points.
    pub fn support(&self) -> Option<Support3> {
        match self {
            Witness::Offsets { support, .. } => Some(support.clone()),
            Witness::Geometric { support, .. } => Some(support.support()),
            Witness::Table { table } if table.support_x() == table.support_y() => Some(table.support_x().clone()),
            _ => None,
        }
    }

    /// Rational ratio of a geometric support.
    pub fn beta(&self) -> Option<Rational> {
        match self {
            Witness::Geometric { support, .. } => Some(support.beta().clone()),
            Witness::Algebraic(_) => None,
            _ => self.support()?.beta_form().map(|b| b.beta().clone()),
        }
    }

    /// Offset vector over ℚ or ℚ(√d); `None` for algebraic witnesses.
    pub fn offset_vector(&self) -> Option<OffsetVector> {
        match self {
            Witness::Offsets { offsets, .. } => Some(offsets.clone()),
            Witness::Geometric { y, .. } => Some(from_y(y)),
            Witness::Table { table } => Some(table.offsets()),
            Witness::Algebraic(_) => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Witness::Algebraic(a) => a.y.iter().all(IntPoly::is_zero),
            w => w.offset_vector().is_some_and(|x| x.is_zero()),
        }
    }

    /// The witness of the transposed pair `(Y, X)`.
    pub fn transposed(&self) -> Witness {
        match self {
            Witness::Offsets { support, offsets } => Witness::offsets(support.clone(), offsets.transposed()),
            Witness::Geometric { support, y } => {
                let [y1, y2, y3, y4] = y.y.clone();
                Witness::geometric(support.clone(), YVector::new([y1, y3, y2, y4]))
            }
            Witness::Algebraic(a) => Witness::Algebraic(a.transposed()),
            Witness::Table { table } => Witness::table(table.transposed()),
        }
    }

    /// A valid joint table realizing the witness: the canonical rescaling
    /// for offsets (the independence table when trivial). `None` for
    /// algebraic witnesses.
    pub fn realize(&self) -> Result<Option<JointTable>, EngineError> {
        if let Witness::Table { table } = self {
            return Ok(Some(table.clone()));
        }
        let (Some(x), Some(s)) = (self.offset_vector(), self.support()) else {
            return Ok(None);
        };
        if x.is_zero() {
            return Ok(Some(JointTable::independent(s.clone(), s)));
        }
        Ok(Some(JointTable::from_offsets(&rescale(&x)?, s.clone(), s)?))
    }

    /// Single-cell membership test.
    pub fn is_member(&self, j: u32, k: u32) -> Result<bool, EngineError> {
        Ok(enumerate_cells(self, &[(j, k)], j, k, &Limits::default().with_exec(crate::par::Exec::Sequential))?
            .contains(&(j, k)))
    }
}

fn enumerate_cells(w: &Witness, cells: &[Point], jm: u32, km: u32, limits: &Limits) -> Result<Vec<Point>, EngineError> {
    if cells.iter().any(|&(j, k)| j == 0 || k == 0) {
        return Err(EngineError::ZeroExponent);
    }
    let exec = limits.exec;
    match w {
        Witness::Offsets { support, offsets } if support.kind() == SupportKind::PositiveOrdered => {
            let seq = ASequence::new(support)?;
            seq.prefill(jm.max(km));
            let hits = exec.try_map(cells, |&(j, k)| condition_lhs(offsets, &seq, j, k).map(|v| v.is_zero()))?;
            Ok(cells.iter().zip(hits).filter(|(_, h)| *h).map(|(p, _)| *p).collect())
        }
        Witness::Geometric { support, y } => {
            let beta = support.beta();
            let mut pows = vec![Rational::one()];
            for e in 1..=(jm + km) as usize {
                pows.push(&pows[e - 1] * beta);
            }
            let [y1, y2, y3, y4] = &y.y;
            let hits = exec.try_map(cells, |&(j, k)| -> Result<bool, EngineError> {
                let (j, k) = (j as usize, k as usize);
                let v = y1
                    .checked_add(&y2.scale(&pows[j]))?
                    .checked_add(&y3.scale(&pows[k]))?
                    .checked_add(&y4.scale(&pows[j + k]))?;
                Ok(v.is_zero())
            })?;
            Ok(cells.iter().zip(hits).filter(|(_, h)| *h).map(|(p, _)| *p).collect())
        }
        Witness::Algebraic(a) => Ok(exec.filter(cells, |&(j, k)| a.is_member(j, k))),
        _ => {
            let table = w.realize()?.expect("offset and table witnesses realize");
            let tm = TableMoments::new(&table, jm, km);
            Ok(exec.filter(cells, |&(j, k)| tm.covariance(j, k).is_zero()))
        }
    }
}

/// All members of `[1..j_max]×[1..k_max]`, sorted, with default limits.
pub fn enumerate_box(w: &Witness, j_max: u32, k_max: u32) -> Result<Vec<Point>, EngineError> {
    enumerate_box_with(w, j_max, k_max, &Limits::default())
}

/// Box enumeration with an explicit execution strategy and exponent cap.
pub fn enumerate_box_with(w: &Witness, j_max: u32, k_max: u32, limits: &Limits) -> Result<Vec<Point>, EngineError> {
    limits.check_box(j_max, k_max)?;
    let cells = box_points(j_max, k_max);
    let mut found = enumerate_cells(w, &cells, j_max, k_max, limits)?;
    found.sort_unstable();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::to_y;
    use crate::par::Exec;

    fn s123() -> Support3 {
        Support3::ints(1, 2, 3).unwrap()
    }

    #[test]
    fn diagonal_enumeration() {
        let w = Witness::offsets(s123(), OffsetVector::ints([0, 1, -1, 0]));
        let want: Vec<Point> = (1..=10).map(|m| (m, m)).collect();
        assert_eq!(enumerate_box(&w, 10, 10).unwrap(), want);
        let seq = enumerate_box_with(&w, 10, 10, &Limits::default().with_exec(Exec::Sequential)).unwrap();
        assert_eq!(seq, want);
    }

    #[test]
    fn trivial_witness_is_everything() {
        let w = Witness::offsets(s123(), OffsetVector::zero());
        assert_eq!(enumerate_box(&w, 3, 4).unwrap().len(), 12);
        assert!(w.is_trivial());
    }

    #[test]
    fn table_path_agrees_with_offsets_path() {
        let x = OffsetVector::ints([2, -3, 1, 4]);
        let w = Witness::offsets(s123(), x.clone());
        let t = w.realize().unwrap().unwrap();
        let wt = Witness::table(t);
        assert_eq!(enumerate_box(&w, 8, 8).unwrap(), enumerate_box(&wt, 8, 8).unwrap());
    }

    #[test]
    fn geometric_path_agrees_with_offsets_path() {
        let bs = BetaSupport::new(1.into(), 2.into()).unwrap();
        let y = YVector::new([16.into(), 0.into(), 0.into(), (-1).into()]);
        let wg = Witness::geometric(bs.clone(), y.clone());
        let wo = Witness::offsets(bs.support(), from_y(&y));
        assert_eq!(enumerate_box(&wg, 10, 10).unwrap(), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(enumerate_box(&wo, 10, 10).unwrap(), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(to_y(&from_y(&y)), y);
    }

    #[test]
    fn exponent_cap() {
        let w = Witness::offsets(s123(), OffsetVector::ints([1, 0, 0, 0]));
        let limits = Limits { max_exp: 5, ..Limits::default() };
        assert!(matches!(enumerate_box_with(&w, 6, 2, &limits), Err(EngineError::ExponentCap { .. })));
        assert!(enumerate_box(&w, 0, 2).is_err());
    }

    #[test]
    fn json_shape() {
        let w = Witness::offsets(s123(), OffsetVector::ints([0, 1, -1, 0]));
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["form"], "offsets");
        assert_eq!(v["x"][2], "-1");
        assert_eq!(serde_json::from_value::<Witness>(v).unwrap(), w);
    }

    #[test]
    fn algebraic_membership_matches_rational_case() {
        // rational beta = 2 wrapped as an algebraic number
        let beta = AlgebraicReal::new(&IntPoly::from_i64(&[-2, 1]), 1.into(), 3.into()).unwrap();
        let a = AlgebraicWitness {
            alpha: 1.into(),
            beta,
            y: [IntPoly::from_i64(&[16]), IntPoly::zero(), IntPoly::zero(), IntPoly::from_i64(&[-1])],
        };
        let w = Witness::Algebraic(a.clone());
        assert_eq!(enumerate_box(&w, 6, 6).unwrap(), vec![(1, 3), (2, 2), (3, 1)]);
        assert!(a.table_is_valid());
    }
}

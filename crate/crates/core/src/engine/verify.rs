use serde::{Deserialize, Serialize};

use crate::constructions::{slopeline_certificate, slopeline_y};
use crate::model::{to_y, OffsetVector, Support3, SupportKind};
use crate::numeric::{RatMatrix, Rational, Scalar};

use super::classify::lattice_zeros;
use super::witness::enumerate_box_with;
use super::{ASequence, Certificate, EngineError, Limits, Point, SetDescriptor, SetKind, Witness};

/// Outcome of the exact global argument attached to a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum AnalyticCheck {
    Passed(String),
    Failed(String),
    NotApplicable(String),
}

impl AnalyticCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AnalyticCheck::Passed(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch { missing: Vec<Point>, unexpected: Vec<Point> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UncorrReport {
    pub witness: Witness,
    pub support: Option<Support3>,
    pub claimed: SetKind,
    #[serde(rename = "box")]
    pub box_size: (u32, u32),
    pub found: Vec<Point>,
    pub verdict: Verdict,
    pub analytic: AnalyticCheck,
    pub certificate: Certificate,
}

impl UncorrReport {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }

    /// The claim together with the strongest certificate obtained.
    pub fn descriptor(&self) -> SetDescriptor {
        SetDescriptor::new(self.claimed.clone(), self.certificate)
    }
}

/// [`verify_claim_with`] using default limits.
pub fn verify_claim(w: &Witness, claim: &SetDescriptor, j_max: u32, k_max: u32) -> Result<UncorrReport, EngineError> {
    verify_claim_with(w, claim, j_max, k_max, &Limits::default())
}

/// Enumerates the box, compares with the claim, and runs the analytic
/// check for the claimed kind. The report's certificate is
/// `GlobalAnalytic` only when both succeed.
pub fn verify_claim_with(
    w: &Witness,
    claim: &SetDescriptor,
    j_max: u32,
    k_max: u32,
    limits: &Limits,
) -> Result<UncorrReport, EngineError> {
    let kind = &claim.kind;
    check_compatible(w, kind)?;
    let found = enumerate_box_with(w, j_max, k_max, limits)?;
    let expected = kind.in_box(j_max, k_max);
    let verdict = if found == expected {
        Verdict::Match
    } else {
        Verdict::Mismatch {
            missing: expected.iter().copied().filter(|p| found.binary_search(p).is_err()).collect(),
            unexpected: found.iter().copied().filter(|p| expected.binary_search(p).is_err()).collect(),
        }
    };
    let analytic = analytic_check(w, kind, k_max)?;
    let certificate = if verdict == Verdict::Match && analytic.passed() {
        Certificate::GlobalAnalytic
    } else {
        Certificate::BoxVerified(j_max, k_max)
    };
    Ok(UncorrReport {
        witness: w.clone(),
        support: w.support(),
        claimed: kind.clone(),
        box_size: (j_max, k_max),
        found,
        verdict,
        analytic,
        certificate,
    })
}

fn incompatible(kind: &SetKind, reason: &str) -> EngineError {
    EngineError::IncompatibleDescriptor { descriptor: kind.to_string(), reason: reason.to_string() }
}

fn symmetric_pair(w: &Witness) -> bool {
    match w {
        Witness::Table { table } => {
            table.support_x().kind() == SupportKind::SymmetricZero
                && table.support_y().kind() == SupportKind::SymmetricZero
        }
        _ => w.support().is_some_and(|s| s.kind() == SupportKind::SymmetricZero),
    }
}

fn check_compatible(w: &Witness, kind: &SetKind) -> Result<(), EngineError> {
    match kind {
        SetKind::LatticeUnion(_) if !symmetric_pair(w) => {
            Err(incompatible(kind, "parity lattices need a {-a, 0, a} support"))
        }
        SetKind::AntiDiagonal(_) | SetKind::SlopeLine { .. }
            if w.beta().is_none() && !matches!(w, Witness::Algebraic(_)) =>
        {
            Err(incompatible(kind, "needs a geometric support (a, ab, ab^2)"))
        }
        SetKind::AntiDiagonal(m) | SetKind::SlopeLine { m, .. } if *m < 2 => {
            Err(incompatible(kind, "m must be at least 2"))
        }
        _ => Ok(()),
    }
}

/// Outcome of scanning `p + A_n q ≠ 0` over all `n ≥ 1`.
enum OffFactor {
    Never,
    VanishesAt(u32),
    Undecided,
}

const SCAN_LIMIT: u32 = 4096;

fn off_factor(p: &Scalar, q: &Scalar, seq: &ASequence) -> Result<OffFactor, EngineError> {
    if q.is_zero() {
        return Ok(if p.is_zero() { OffFactor::VanishesAt(1) } else { OffFactor::Never });
    }
    let t = (-p).checked_div(q)?;
    let Some(t) = t.as_rational() else {
        // irrational, while every A_n is rational
        return Ok(OffFactor::Never);
    };
    if *t <= Rational::one() || *t > seq.get(1) {
        return Ok(OffFactor::Never);
    }
    for n in 1..=SCAN_LIMIT {
        let a = seq.get(n);
        if &a == t {
            return Ok(OffFactor::VanishesAt(n));
        }
        if &a < t {
            return Ok(OffFactor::Never);
        }
    }
    Ok(OffFactor::Undecided)
}

fn lin(a: &Scalar, r: &Rational, b: &Scalar) -> Result<Scalar, EngineError> {
    Ok(a.checked_add(&b.scale(r))?)
}

fn line_check(zero_a: Scalar, zero_b: Scalar, off: OffFactor, what: &str) -> AnalyticCheck {
    if !zero_a.is_zero() || !zero_b.is_zero() {
        return AnalyticCheck::Failed(format!("offsets do not have the {what} factorization"));
    }
    match off {
        OffFactor::Never => AnalyticCheck::Passed(format!("lhs factors as {what}; the second factor never vanishes")),
        OffFactor::VanishesAt(n) => AnalyticCheck::Failed(format!("second factor vanishes at n = {n}")),
        OffFactor::Undecided => {
            AnalyticCheck::NotApplicable(format!("second factor not excluded for n <= {SCAN_LIMIT}"))
        }
    }
}

fn row(seq: &ASequence, (j, k): Point) -> [Rational; 4] {
    let aj = seq.get(j);
    let ak = seq.get(k);
    let ajk = &aj * &ak;
    [Rational::one(), aj, ak, ajk]
}

fn dot(r: &[Rational; 4], v: &[Rational; 4]) -> Rational {
    r.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn finite_check(x: &OffsetVector, seq: &ASequence, pts: &[Point]) -> Result<AnalyticCheck, EngineError> {
    let (r, s, d) = x.split_components()?;
    if d.is_none() {
        return Ok(AnalyticCheck::NotApplicable("rational offsets: no finite-set argument".into()));
    }
    match pts {
        [p0] => {
            if !r[3].is_zero() || !s[3].is_zero() {
                return Ok(AnalyticCheck::NotApplicable("x4 must vanish for the singleton argument".into()));
            }
            let det = &r[1] * &s[2] - &r[2] * &s[1];
            if det.is_zero() {
                return Ok(AnalyticCheck::NotApplicable("rational and surd parts are dependent".into()));
            }
            // both components vanish iff (A_j, A_k) = (u, v)
            let u = (&r[2] * &s[0] - &r[0] * &s[2]) / &det;
            let v = (&r[0] * &s[1] - &r[1] * &s[0]) / &det;
            if u == seq.get(p0.0) && v == seq.get(p0.1) {
                Ok(AnalyticCheck::Passed(
                    "both components vanish only at (A_j, A_k) = (A_j0, A_k0); A is injective".into(),
                ))
            } else {
                Ok(AnalyticCheck::Failed(format!("components vanish at (A_j, A_k) = ({u}, {v})")))
            }
        }
        [p1, p2] if p1.0 != p2.0 && p1.1 != p2.1 => {
            let (r1, r2) = (row(seq, *p1), row(seq, *p2));
            if [dot(&r1, &r), dot(&r1, &s), dot(&r2, &r), dot(&r2, &s)].iter().any(|v| !v.is_zero()) {
                return Ok(AnalyticCheck::Failed("rational or surd part misses a claimed point".into()));
            }
            let rank = RatMatrix::from_rows(vec![r.to_vec(), s.to_vec()]).rank();
            if rank != 2 {
                return Ok(AnalyticCheck::Failed("rational and surd parts are parallel".into()));
            }
            Ok(AnalyticCheck::Passed(
                "r, s span the solution plane of both points; a third point would need an affine row relation, \
                 impossible since -l(1-l)(A_j1-A_j2)(A_k1-A_k2) != 0"
                    .into(),
            ))
        }
        _ => Ok(AnalyticCheck::NotApplicable("no global argument for this finite set".into())),
    }
}

fn analytic_check(w: &Witness, kind: &SetKind, k_max: u32) -> Result<AnalyticCheck, EngineError> {
    if let Witness::Algebraic(_) = w {
        return Ok(AnalyticCheck::NotApplicable("irrational ratio below the threshold: box check only".into()));
    }
    if matches!(kind, SetKind::All) {
        return Ok(if w.is_trivial() {
            AnalyticCheck::Passed("zero offsets: the independence table".into())
        } else {
            AnalyticCheck::Failed("nonzero offsets cannot give every pair".into())
        });
    }
    if symmetric_pair(w) {
        if !matches!(kind, SetKind::Empty | SetKind::LatticeUnion(_)) {
            return Ok(AnalyticCheck::NotApplicable("symmetric support: only lattice unions are certified".into()));
        }
        let table = w.realize()?.expect("rational witness");
        let got = SetKind::lattices(lattice_zeros(&table));
        let want = match kind {
            SetKind::LatticeUnion(s) => SetKind::lattices(s.iter().copied()),
            other => other.clone(),
        };
        return Ok(if got == want {
            AnalyticCheck::Passed("covariance at (j, k) is a^(j+k) times a function of the parities".into())
        } else {
            AnalyticCheck::Failed(format!("parity representatives give {got}"))
        });
    }
    let (Some(x), Some(support)) = (w.offset_vector(), w.support()) else {
        return Ok(AnalyticCheck::NotApplicable("X and Y supports differ".into()));
    };
    if support.kind() != SupportKind::PositiveOrdered {
        return Ok(AnalyticCheck::NotApplicable("no global argument for this support".into()));
    }
    let seq = ASequence::new(&support)?;
    let [x1, x2, x3, x4] = &x.x;
    Ok(match kind {
        SetKind::Empty => {
            if x2.is_zero() && x3.is_zero() && x4.is_zero() && !x1.is_zero() {
                AnalyticCheck::Passed("lhs is the nonzero constant x1".into())
            } else {
                AnalyticCheck::NotApplicable("offsets are not of the form (x1, 0, 0, 0)".into())
            }
        }
        SetKind::VLine(j) => {
            let aj = seq.get(*j);
            line_check(lin(x1, &aj, x2)?, lin(x3, &aj, x4)?, off_factor(x2, x4, &seq)?, "(A_m - A_j)(x2 + A_n x4)")
        }
        SetKind::HLine(k) => {
            let ak = seq.get(*k);
            line_check(lin(x1, &ak, x3)?, lin(x2, &ak, x4)?, off_factor(x3, x4, &seq)?, "(A_n - A_k)(x3 + A_m x4)")
        }
        SetKind::Cross(j, k) => {
            let (aj, ak) = (seq.get(*j), seq.get(*k));
            let ok = !x4.is_zero() && *x1 == x4.scale(&(&aj * &ak)) && *x2 == x4.scale(&-&ak) && *x3 == x4.scale(&-&aj);
            if ok {
                AnalyticCheck::Passed("lhs = x4 (A_m - A_j)(A_n - A_k); A is injective".into())
            } else {
                AnalyticCheck::Failed("offsets are not a multiple of (A_j A_k, -A_k, -A_j, 1)".into())
            }
        }
        SetKind::Diagonal => {
            if x1.is_zero() && x4.is_zero() && !x2.is_zero() && *x3 == -x2 {
                AnalyticCheck::Passed("lhs = x2 (A_m - A_n); A is injective".into())
            } else {
                AnalyticCheck::Failed("offsets are not a multiple of (0, 1, -1, 0)".into())
            }
        }
        SetKind::AntiDiagonal(m) => {
            let beta = w.beta().expect("checked compatible");
            let [y1, y2, y3, y4] = to_y(&x).y;
            if y2.is_zero() && y3.is_zero() && !y4.is_zero() && y1 == y4.scale(&-beta.pow(*m as i64)) {
                AnalyticCheck::Passed("y-form lhs = y4 (b^(j+k) - b^m) with b > 1".into())
            } else {
                AnalyticCheck::Failed("y is not a multiple of (b^m, 0, 0, -1)".into())
            }
        }
        SetKind::SlopeLine { m, points } => {
            let beta = w.beta().expect("checked compatible");
            if *points != SetKind::slope(*m, []).in_box(3, 3 * m) {
                return Ok(AnalyticCheck::NotApplicable("extra points are only box-checked".into()));
            }
            let y = to_y(&x);
            let yhat = slopeline_y(&beta, *m);
            let gamma = y.y[3].checked_div(&yhat.y[3])?;
            let mut prop = !gamma.is_zero();
            for (a, b) in y.y.iter().zip(&yhat.y) {
                prop &= a.checked_sub(&b.checked_mul(&gamma)?)?.is_zero();
            }
            if !prop {
                AnalyticCheck::Failed("y is not a multiple of the slope-line solution".into())
            } else {
                match slopeline_certificate(&beta, *m, k_max.max(1))? {
                    Ok(arg) => AnalyticCheck::Passed(arg),
                    Err(reason) => AnalyticCheck::Failed(reason),
                }
            }
        }
        SetKind::Finite(pts) => finite_check(&x, &seq, pts)?,
        SetKind::LatticeUnion(_) | SetKind::All => unreachable!("handled above"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OffsetVector;

    fn s123() -> Support3 {
        Support3::ints(1, 2, 3).unwrap()
    }

    fn claim(s: &str) -> SetDescriptor {
        SetDescriptor::global(s.parse().unwrap())
    }

    #[test]
    fn vline_match_and_hline_mismatch() {
        let w = Witness::offsets(s123(), OffsetVector::from_rationals([0.into(), 0.into(), (-2).into(), 1.into()]));
        let r = verify_claim(&w, &claim("vline:1"), 8, 8).unwrap();
        assert!(r.is_match());
        assert_eq!(r.certificate, Certificate::GlobalAnalytic);
        let r = verify_claim(&w, &claim("hline:1"), 8, 8).unwrap();
        assert!(!r.is_match());
        assert!(!r.analytic.passed());
        assert_eq!(r.certificate, Certificate::BoxVerified(8, 8));
    }

    #[test]
    fn diagonal_certified() {
        let w = Witness::offsets(s123(), OffsetVector::ints([0, 3, -3, 0]));
        let r = verify_claim(&w, &claim("diagonal"), 6, 6).unwrap();
        assert!(r.is_match() && r.analytic.passed());
    }

    #[test]
    fn incompatible_descriptors() {
        let w = Witness::offsets(s123(), OffsetVector::ints([1, 0, 0, 0]));
        assert!(matches!(verify_claim(&w, &claim("lattice:1"), 4, 4), Err(EngineError::IncompatibleDescriptor { .. })));
        assert!(matches!(
            verify_claim(&w, &claim("antidiag:4"), 4, 4),
            Err(EngineError::IncompatibleDescriptor { .. })
        ));
    }

    #[test]
    fn mismatch_lists_differences() {
        let w = Witness::offsets(s123(), OffsetVector::ints([0, 1, -1, 0]));
        let r = verify_claim(&w, &claim("finite:1,1;1,2"), 3, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Mismatch { missing: vec![(1, 2)], unexpected: vec![(2, 2), (3, 3)] });
    }

    #[test]
    fn report_json_has_box_and_pairs() {
        let w = Witness::offsets(s123(), OffsetVector::ints([0, 1, -1, 0]));
        let r = verify_claim(&w, &claim("diagonal"), 2, 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["box"], serde_json::json!([2, 2]));
        assert_eq!(v["found"], serde_json::json!([[1, 1], [2, 2]]));
        assert_eq!(v["verdict"]["result"], "match");
        assert_eq!(v["certificate"], "GlobalAnalytic");
    }
}

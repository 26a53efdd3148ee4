//! Witness constructions, one per family of uncorrelatedness sets.
//!
//! Offsets are returned un-normalized (γ = 1 in every general solution);
//! [`crate::model::rescale`] turns any of them into a valid table.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::AlgebraicWitness;
use crate::engine::{
    verify_claim, ASequence, Certificate, EngineError, Lattice, Point, SetDescriptor, SetKind, Witness,
};
use crate::model::{BetaSupport, JointTable, ModelError, OffsetVector, Support3, YVector};
use crate::numeric::{
    default_width, AlgebraicReal, IntPoly, MultiPoly, NumericError, QuadExt, RatMatrix, Rational, Scalar,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the two membership equations are dependent")]
    DegenerateSystem,
    #[error("beta {beta} is below the threshold root of {poly}")]
    BetaTooSmall { beta: Rational, poly: IntPoly },
    #[error("no sign change of P found above 1")]
    BracketNotFound,
    #[error("construction did not verify: {0}")]
    Unverified(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

fn pre(ok: bool, msg: &str) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::Precondition(msg.to_string()))
    }
}

fn sqrt2() -> Scalar {
    Scalar::sqrt(2).expect("2 is square-free")
}

/// `(1, 0, 0, 0)`: the condition reads `1 = 0`.
pub fn empty_witness() -> OffsetVector {
    OffsetVector::ints([1, 0, 0, 0])
}

/// `(A_{j0} + √2 A_{k0}, −1, −√2, 0)`, realizing `{(j0, k0)}`.
pub fn singleton_witness(j0: u32, k0: u32, seq: &ASequence) -> Result<OffsetVector, ConstructionError> {
    pre(j0 >= 1 && k0 >= 1, "exponents start at 1")?;
    let r2 = sqrt2();
    let first = QuadExt::new(seq.get(j0), seq.get(k0), 2)?;
    Ok(OffsetVector::new([first.into(), Scalar::from(-1), -&r2, Scalar::zero()]))
}

/// `v₁ + √2 v₂` for a rational basis `{v₁, v₂}` of the offsets vanishing at
/// both points.
pub fn two_point_witness(p1: Point, p2: Point, seq: &ASequence) -> Result<OffsetVector, ConstructionError> {
    pre(p1.0 >= 1 && p1.1 >= 1 && p2.0 >= 1 && p2.1 >= 1, "exponents start at 1")?;
    pre(p1.0 != p2.0 && p1.1 != p2.1, "points must differ in both coordinates")?;
    let row = |(j, k): Point| {
        let (a, b) = (seq.get(j), seq.get(k));
        let ab = &a * &b;
        vec![Rational::one(), a, b, ab]
    };
    let m = RatMatrix::from_rows(vec![row(p1), row(p2)]);
    let basis = m.nullspace();
    if basis.len() != 2 {
        return Err(ConstructionError::DegenerateSystem);
    }
    let s2 = sqrt2();
    let x: Vec<Scalar> = basis[0]
        .iter()
        .zip(&basis[1])
        .map(|(a, b)| Scalar::from(a.clone()).checked_add(&s2.scale(b)))
        .collect::<Result<_, _>>()?;
    Ok(OffsetVector::new([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()]))
}

/// `(0, 0, −A_j, 1)`: lhs `= A_n (A_m − A_j)`.
pub fn vline_witness(j: u32, seq: &ASequence) -> Result<OffsetVector, ConstructionError> {
    pre(j >= 1, "exponents start at 1")?;
    Ok(OffsetVector::from_rationals([Rational::zero(), Rational::zero(), -seq.get(j), Rational::one()]))
}

/// `(0, −A_k, 0, 1)`: lhs `= A_m (A_n − A_k)`.
pub fn hline_witness(k: u32, seq: &ASequence) -> Result<OffsetVector, ConstructionError> {
    pre(k >= 1, "exponents start at 1")?;
    Ok(OffsetVector::from_rationals([Rational::zero(), -seq.get(k), Rational::zero(), Rational::one()]))
}

/// `(A_j A_k, −A_k, −A_j, 1)`: lhs `= (A_m − A_j)(A_n − A_k)`.
pub fn cross_witness(j: u32, k: u32, seq: &ASequence) -> Result<OffsetVector, ConstructionError> {
    pre(j >= 1 && k >= 1, "exponents start at 1")?;
    let (aj, ak) = (seq.get(j), seq.get(k));
    Ok(OffsetVector::from_rationals([&aj * &ak, -&ak, -&aj, Rational::one()]))
}

/// `(0, 1, −1, 0)`: lhs `= A_m − A_n`.
pub fn diagonal_witness() -> OffsetVector {
    OffsetVector::ints([0, 1, -1, 0])
}

/// `y = (β^m, 0, 0, −1)`: y-form lhs `= β^m − β^{j+k}`.
pub fn antidiagonal_witness(m: u32, bs: &BetaSupport) -> Result<YVector, ConstructionError> {
    pre(m >= 2, "m must be at least 2")?;
    Ok(YVector::new([Scalar::from(bs.beta().pow(m as i64)), Scalar::zero(), Scalar::zero(), Scalar::from(-1)]))
}

/// `β^{m+1} − β² − β − 1`.
pub fn beta0_poly(m: u32) -> IntPoly {
    &IntPoly::monomial(1, m as usize + 1) - &IntPoly::from_i64(&[1, 1, 1])
}

/// Isolating interval in `(1, 2)` for the root of `β^{m+1} − β² − β − 1`.
pub fn beta0(m: u32, width: &Rational) -> Result<(Rational, Rational), ConstructionError> {
    pre(m >= 2, "m must be at least 2")?;
    Ok(beta0_poly(m).isolate_root(&Rational::one(), &Rational::from(2), width)?)
}

/// `P(β) = (β^{m+1} − β² − β − 1)β^k + (β^{m+2} + β^{m+1} + β^m − β)β^{2m}`.
pub fn p_poly(m: u32, k: u32) -> IntPoly {
    let c1 = &(&IntPoly::monomial(1, m as usize + 2) + &IntPoly::monomial(1, m as usize + 1))
        + &(&IntPoly::monomial(1, m as usize) - &IntPoly::monomial(1, 1));
    &(&beta0_poly(m) * &IntPoly::monomial(1, k as usize)) + &(&c1 * &IntPoly::monomial(1, 2 * m as usize))
}

/// Isolating interval for a root of `P` in `(1, β₀)`, `k > 4m`.
pub fn beta_star(m: u32, k: u32, width: &Rational) -> Result<(Rational, Rational), ConstructionError> {
    pre(m >= 2, "m must be at least 2")?;
    pre(k > 4 * m, "k must exceed 4m")?;
    let p = p_poly(m, k);
    let (b0_lo, _) = beta0(m, &default_width())?;
    if p.sign_at(&b0_lo) <= 0 {
        return Err(ConstructionError::BracketNotFound);
    }
    // P(1) = 0 and P'(1) = 8m − 2k < 0, so P < 0 just above 1
    let mut delta = Rational::frac(1, 2);
    for _ in 0..64 {
        let lo = Rational::one() + &delta;
        if lo < b0_lo && p.sign_at(&lo) < 0 {
            return Ok(p.isolate_root(&lo, &b0_lo, width)?);
        }
        delta = delta * Rational::frac(1, 2);
    }
    Err(ConstructionError::BracketNotFound)
}

/// β* as an exact algebraic number.
pub fn beta_star_real(m: u32, k: u32) -> Result<AlgebraicReal, ConstructionError> {
    let (lo, hi) = beta_star(m, k, &default_width())?;
    Ok(AlgebraicReal::new(&p_poly(m, k), lo, hi)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlopeMode {
    /// Realize exactly `{(1,m),(2,2m),(3,3m)}`; needs `β ≥ β₀`.
    AtOrAboveBeta0,
    /// Use `β = β*(m, k)` so that `(4, k)` joins the three points.
    BetaStar(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeLineParams {
    pub m: u32,
    pub alpha: Rational,
    /// Used in `AtOrAboveBeta0` mode; `BetaStar` computes its own ratio.
    pub beta: Rational,
    pub beta0_interval: (Rational, Rational),
    pub mode: SlopeMode,
}

impl SlopeLineParams {
    pub fn at_or_above(m: u32, alpha: Rational, beta: Rational) -> Result<Self, ConstructionError> {
        pre(m >= 2, "m must be at least 2")?;
        let beta0_interval = beta0(m, &default_width())?;
        // β₀ is irrational, so β ≥ β₀ iff the increasing polynomial is positive at β
        if beta <= Rational::one() || beta0_poly(m).sign_at(&beta) < 0 {
            return Err(ConstructionError::BetaTooSmall { beta, poly: beta0_poly(m) });
        }
        Ok(SlopeLineParams { m, alpha, beta, beta0_interval, mode: SlopeMode::AtOrAboveBeta0 })
    }

    pub fn beta_star(m: u32, k: u32, alpha: Rational) -> Result<Self, ConstructionError> {
        pre(m >= 2, "m must be at least 2")?;
        pre(k > 4 * m, "k must exceed 4m")?;
        let beta0_interval = beta0(m, &default_width())?;
        let (lo, hi) = beta_star(m, k, &default_width())?;
        Ok(SlopeLineParams { m, alpha, beta: lo.midpoint(&hi), beta0_interval, mode: SlopeMode::BetaStar(k) })
    }

    pub fn descriptor_kind(&self) -> SetKind {
        match self.mode {
            SlopeMode::AtOrAboveBeta0 => SetKind::slope(self.m, []),
            SlopeMode::BetaStar(k) => SetKind::slope(self.m, [(4, k)]),
        }
    }
}

/// The general solution with `γ = 1` as integer polynomials in β.
pub fn slopeline_y_polys(m: u32) -> [IntPoly; 4] {
    let m = m as usize;
    let b = |e: usize| IntPoly::monomial(1, e);
    let one = IntPoly::constant(1);
    [&(&b(m) - &b(1)) * &b(2 * m + 2), &(&one - &b(m + 1)) * &b(2 * m), &(&b(m + 1) - &one) * &b(2), &b(1) - &b(m)]
}

/// The general solution evaluated at a rational β.
pub fn slopeline_y(beta: &Rational, m: u32) -> YVector {
    YVector::new(slopeline_y_polys(m).map(|p| Scalar::from(p.eval(beta))))
}

/// The slope-line witness: rational `y` for `AtOrAboveBeta0`, an algebraic
/// witness over `ℚ(β*)` for `BetaStar`.
pub fn slopeline_witness(p: &SlopeLineParams) -> Result<Witness, ConstructionError> {
    match p.mode {
        SlopeMode::AtOrAboveBeta0 => {
            let bs = BetaSupport::new(p.alpha.clone(), p.beta.clone())?;
            Ok(Witness::geometric(bs, slopeline_y(&p.beta, p.m)))
        }
        SlopeMode::BetaStar(k) => Ok(Witness::Algebraic(AlgebraicWitness {
            alpha: p.alpha.clone(),
            beta: beta_star_real(p.m, k)?,
            y: slopeline_y_polys(p.m),
        })),
    }
}

// Symbolic D(j, k) in the variables (β, w = β^k), for a fixed j.
fn d_symbolic(m: u32, j: u32) -> MultiPoly {
    let b = |e: u32| MultiPoly::var_pow(2, 0, e);
    let w = MultiPoly::var(2, 1);
    let one = MultiPoly::one(2);
    let t1 = &(&b(m) - &b(1)) * &(&b(2 * m + 2) - &(&b(j) * &w));
    let t2 = &(&b(m + 1) - &one) * &(&(&b(2) * &w) - &b(j + 2 * m));
    &t1 + &t2
}

/// The factorizations of `D(j, k)` for `j = 1..4` as identities in `(β, β^k)`.
pub fn d_factorizations(m: u32) -> [(MultiPoly, MultiPoly); 4] {
    let b = |e: u32| MultiPoly::var_pow(2, 0, e);
    let w = MultiPoly::var(2, 1);
    let one = MultiPoly::one(2);
    let bm1 = &b(1) - &one;
    let b2m1 = &b(2) - &one;
    let f1 = &(&b2m1 * &b(m + 1)) * &(&w - &b(m));
    let f2 = &(&(&b(2) * &bm1) * &(&b(m) + &one)) * &(&w - &b(2 * m));
    let f3 = &(&b(2) * &b2m1) * &(&w - &b(3 * m));
    let c0 = &(&b(m + 1) - &b(2)) - &(&b(1) + &one);
    let c1 = &(&(&b(m + 2) + &b(m + 1)) + &b(m)) - &b(1);
    let p = &(&c0 * &w) + &(&c1 * &b(2 * m));
    let f4 = &(&(&one - &b(1)) * &b(2)) * &p;
    [(d_symbolic(m, 1), f1), (d_symbolic(m, 2), f2), (d_symbolic(m, 3), f3), (d_symbolic(m, 4), f4)]
}

/// `D(j, k)` at a rational β; equals the y-form lhs of the slope-line witness.
pub fn d_value(beta: &Rational, m: u32, j: u32, k: u32) -> Rational {
    let b = |e: u32| beta.pow(e as i64);
    (b(m) - beta) * (b(2 * m + 2) - b(j + k)) + (b(m + 1) - Rational::one()) * (b(k + 2) - b(j + 2 * m))
}

/// Global certificate that the slope-line witness at rational `β` realizes
/// exactly `{(1,m),(2,2m),(3,3m)}`:
///
/// * `D(1..3, k)` factor with a single zero in `k` at `m, 2m, 3m`;
/// * the coefficient of `β^j` in `D(j, k)` is negative, so `D` decreases in `j`;
/// * `D(4, k) = (1−β)β²P` with both coefficients of `P` nonnegative, so
///   `D(4, k) < 0` for every `k`, hence `D(j, k) < 0` for all `j ≥ 4`.
///
/// `D(4, k) < 0` is also checked directly for `k ≤ k_max`. The inner result
/// is the argument on success or the failing step.
pub fn slopeline_certificate(beta: &Rational, m: u32, k_max: u32) -> Result<Result<String, String>, EngineError> {
    if m < 2 || *beta <= Rational::one() {
        return Ok(Err("needs m >= 2 and beta > 1".into()));
    }
    for (j, (d, f)) in d_factorizations(m).iter().enumerate() {
        if !d.checked_eq(f)? {
            return Ok(Err(format!("factorization of D({}, k) does not hold", j + 1)));
        }
    }
    let b = |e: u32| beta.pow(e as i64);
    if (b(m) - beta).signum() <= 0 || (b(m + 1) - Rational::one()).signum() <= 0 {
        return Ok(Err("coefficient of beta^j is not negative".into()));
    }
    let c0 = beta0_poly(m).eval(beta);
    let c1 = b(m + 2) + b(m + 1) + b(m) - beta;
    if c0.signum() < 0 {
        return Ok(Err("beta is below the threshold root".into()));
    }
    if c1.signum() <= 0 {
        return Ok(Err("constant coefficient of P is not positive".into()));
    }
    for k in 1..=k_max {
        if d_value(beta, m, 4, k).signum() >= 0 {
            return Ok(Err(format!("D(4, {k}) is not negative")));
        }
    }
    Ok(Ok(format!(
        "D(1..3, k) vanish only at k = {m}, {}, {}; D decreases in j; D(4, k) = (1-b)b^2 P < 0 for all k",
        2 * m,
        3 * m
    )))
}

/// Offsets on `{−α, 0, α}` whose uncorrelatedness set is exactly the union
/// of the given parity lattices.
///
/// The four lattice conditions are `x₁`, `x₁ + 2x₃`, `x₁ + 2x₂` and
/// `x₁ + 2x₂ + 2x₃ + 4x₄`; the targets are 0 on the chosen lattices and
/// distinct nonzero values elsewhere.
pub fn lattice_witness(lattices: &BTreeSet<Lattice>) -> OffsetVector {
    let t: Vec<Rational> = Lattice::ALL
        .iter()
        .map(|l| if lattices.contains(l) { Rational::zero() } else { Rational::from(l.index() as i64) })
        .collect();
    let half = Rational::frac(1, 2);
    let quarter = Rational::frac(1, 4);
    let x1 = t[0].clone();
    let x3 = (&t[1] - &t[0]) * &half;
    let x2 = (&t[2] - &t[0]) * &half;
    let x4 = (&(&(&t[3] - &t[2]) - &t[1]) + &t[0]) * &quarter;
    OffsetVector::from_rationals([x1, x2, x3, x4])
}

/// A witness family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Empty { support: Support3 },
    Singleton { support: Support3, j: u32, k: u32 },
    TwoPoint { support: Support3, p1: Point, p2: Point },
    Vline { support: Support3, j: u32 },
    Hline { support: Support3, k: u32 },
    Cross { support: Support3, j: u32, k: u32 },
    Diagonal { support: Support3 },
    Antidiagonal { support: BetaSupport, m: u32 },
    Slopeline { params: SlopeLineParams },
    Lattice { alpha: Rational, lattices: BTreeSet<Lattice> },
}

/// A witness, the set it realizes with the certificate obtained on a
/// verification box, and a valid table realizing it when representable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub family: Family,
    pub witness: Witness,
    pub descriptor: SetDescriptor,
    pub table: Option<JointTable>,
}

fn positive_seq(s: &Support3) -> Result<ASequence, ConstructionError> {
    Ok(ASequence::new(s)?)
}

/// Builds the witness for `family`, verifies it on `box_size` and returns
/// it with the certificate the verification produced.
pub fn construct(family: &Family, box_size: (u32, u32)) -> Result<Construction, ConstructionError> {
    let (witness, kind) = match family {
        Family::Empty { support } => (Witness::offsets(support.clone(), empty_witness()), SetKind::Empty),
        Family::Singleton { support, j, k } => {
            let x = singleton_witness(*j, *k, &positive_seq(support)?)?;
            (Witness::offsets(support.clone(), x), SetKind::finite([(*j, *k)])?)
        }
        Family::TwoPoint { support, p1, p2 } => {
            let x = two_point_witness(*p1, *p2, &positive_seq(support)?)?;
            (Witness::offsets(support.clone(), x), SetKind::finite([*p1, *p2])?)
        }
        Family::Vline { support, j } => {
            (Witness::offsets(support.clone(), vline_witness(*j, &positive_seq(support)?)?), SetKind::VLine(*j))
        }
        Family::Hline { support, k } => {
            (Witness::offsets(support.clone(), hline_witness(*k, &positive_seq(support)?)?), SetKind::HLine(*k))
        }
        Family::Cross { support, j, k } => {
            (Witness::offsets(support.clone(), cross_witness(*j, *k, &positive_seq(support)?)?), SetKind::Cross(*j, *k))
        }
        Family::Diagonal { support } => {
            positive_seq(support)?;
            (Witness::offsets(support.clone(), diagonal_witness()), SetKind::Diagonal)
        }
        Family::Antidiagonal { support, m } => {
            (Witness::geometric(support.clone(), antidiagonal_witness(*m, support)?), SetKind::AntiDiagonal(*m))
        }
        Family::Slopeline { params } => (slopeline_witness(params)?, params.descriptor_kind()),
        Family::Lattice { alpha, lattices } => {
            let support = Support3::symmetric(alpha.clone())?;
            (Witness::offsets(support, lattice_witness(lattices)), SetKind::lattices(lattices.iter().copied()))
        }
    };
    let mut bx = box_size;
    if let SetKind::SlopeLine { points, .. } = &kind {
        for &(j, k) in points {
            bx = (bx.0.max(j), bx.1.max(k));
        }
    }
    let report = verify_claim(&witness, &SetDescriptor::new(kind, Certificate::BoxVerified(bx.0, bx.1)), bx.0, bx.1)?;
    if !report.is_match() {
        return Err(ConstructionError::Unverified(format!("{:?}", report.verdict)));
    }
    Ok(Construction { family: family.clone(), table: witness.realize()?, witness, descriptor: report.descriptor() })
}

//! Two-variable complete homogeneous polynomials `σ_k`, the generalized
//! Vandermonde determinants
//!
//! ```text
//! F_{m,n} = det[1, v, v^m, v^n]          G_{m,n} = det[1, v^m, v^n, v^{m+n}]
//! ```
//!
//! over the rows `v = x, y, z, t`, their closed forms as the Vandermonde
//! product times an explicit positive sum, and the determinant test that
//! forces independence for four points on a line `k = (b/a) j`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{ASequence, EngineError, Point};
use crate::model::{BetaSupport, Support3};
use crate::numeric::{MultiPoly, RatMatrix, Rational};
use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeterminantError {
    #[error("need 1 <= m < n, got m = {m}, n = {n}")]
    BadIndices { m: u32, n: u32 },
    #[error("points are not on one line through the origin")]
    NotOnLine,
    #[error("slope one is excluded")]
    SlopeOne,
    #[error("points must be distinct with positive coordinates")]
    BadPoints,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// `σ_k(x, y) = Σ_{i=0}^{k} x^{k−i} y^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaPoly {
    pub k: u32,
    pub poly: MultiPoly,
}

/// `σ_k` in variables `a` and `b` of a polynomial ring of the given arity.
pub fn sigma_in(arity: usize, a: usize, b: usize, k: u32) -> MultiPoly {
    let mut out = MultiPoly::zero(arity);
    for i in 0..=k {
        out = &out + &(&MultiPoly::var_pow(arity, a, k - i) * &MultiPoly::var_pow(arity, b, i));
    }
    out
}

pub fn sigma(k: u32) -> SigmaPoly {
    SigmaPoly { k, poly: sigma_in(2, 0, 1, k) }
}

/// `σ_k(a, b)` at rationals.
pub fn sigma_eval(k: u32, a: &Rational, b: &Rational) -> Rational {
    (0..=k).map(|i| a.pow((k - i) as i64) * b.pow(i as i64)).sum()
}

/// `σ_k(x,y) − σ_k(x,z) = (y − z) Σ_{j=0}^{k−1} x^{k−j−1} σ_j(y,z)`.
pub fn sigma_diff_identity(k: u32) -> bool {
    let lhs = &sigma_in(3, 0, 1, k) - &sigma_in(3, 0, 2, k);
    let mut sum = MultiPoly::zero(3);
    for j in 0..k {
        sum = &sum + &(&MultiPoly::var_pow(3, 0, k - j - 1) * &sigma_in(3, 1, 2, j));
    }
    let rhs = &(&MultiPoly::var(3, 1) - &MultiPoly::var(3, 2)) * &sum;
    lhs == rhs
}

/// Direct and closed-form expansions of one determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetResult {
    pub m: u32,
    pub n: u32,
    pub direct: MultiPoly,
    pub closed: MultiPoly,
    pub equal: bool,
}

impl DetResult {
    fn new(m: u32, n: u32, direct: MultiPoly, closed: MultiPoly) -> Self {
        let equal = direct == closed;
        DetResult { m, n, direct, closed, equal }
    }

    pub fn summary(&self) -> DetSummary {
        DetSummary { m: self.m, n: self.n, equal: self.equal, term_counts: (self.direct.len(), self.closed.len()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetSummary {
    pub m: u32,
    pub n: u32,
    pub equal: bool,
    pub term_counts: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Det2Result {
    pub result: DetResult,
    /// The double sum multiplying `(z − y)`.
    pub factor: MultiPoly,
    pub factor_positive: bool,
    pub factor_symmetric: bool,
}

/// `σ_j(x,y)σ_m(x,z) − σ_j(x,z)σ_m(x,y)` against
/// `(z − y) Σ_{r=0}^{j} Σ_{s=j+1}^{m} x^{j+m−r−s} y^r z^r σ_{s−r−1}(y,z)`.
pub fn det2_sigma(j: u32, m: u32) -> Result<Det2Result, DeterminantError> {
    if j > m {
        return Err(DeterminantError::BadIndices { m: j, n: m });
    }
    let direct = &(&sigma_in(3, 0, 1, j) * &sigma_in(3, 0, 2, m)) - &(&sigma_in(3, 0, 2, j) * &sigma_in(3, 0, 1, m));
    let mut factor = MultiPoly::zero(3);
    for r in 0..=j {
        for s in j + 1..=m {
            let mono = MultiPoly::term(3, 1, vec![j + m - r - s, r, r]);
            factor = &factor + &(&mono * &sigma_in(3, 1, 2, s - r - 1));
        }
    }
    let closed = &(&MultiPoly::var(3, 2) - &MultiPoly::var(3, 1)) * &factor;
    let factor_positive = factor.all_coefficients_positive();
    let factor_symmetric = factor.swap_vars(1, 2) == factor;
    Ok(Det2Result { result: DetResult::new(j, m, direct, closed), factor, factor_positive, factor_symmetric })
}

fn det4(rows: &[[MultiPoly; 4]; 4]) -> MultiPoly {
    fn det3(r: [&[MultiPoly; 4]; 3], cols: [usize; 3]) -> MultiPoly {
        let [a, b, c] = cols;
        let m = |i: usize, j: usize| &r[i][j];
        let t1 = m(0, a) * &(&(m(1, b) * m(2, c)) - &(m(1, c) * m(2, b)));
        let t2 = m(0, b) * &(&(m(1, a) * m(2, c)) - &(m(1, c) * m(2, a)));
        let t3 = m(0, c) * &(&(m(1, a) * m(2, b)) - &(m(1, b) * m(2, a)));
        &(&t1 - &t2) + &t3
    }
    let arity = rows[0][0].arity();
    let mut out = MultiPoly::zero(arity);
    for col in 0..4 {
        let rest: Vec<usize> = (0..4).filter(|&c| c != col).collect();
        let minor = det3([&rows[1], &rows[2], &rows[3]], [rest[0], rest[1], rest[2]]);
        let term = &rows[0][col] * &minor;
        out = if col % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

fn power_det(exps: [u32; 4]) -> MultiPoly {
    let row = |v: usize| exps.map(|e| MultiPoly::var_pow(4, v, e));
    det4(&[row(0), row(1), row(2), row(3)])
}

/// `(y−x)(z−x)(t−x)(z−y)(t−y)(t−z)`.
pub fn vandermonde() -> MultiPoly {
    let v = |i| MultiPoly::var(4, i);
    let mut out = MultiPoly::one(4);
    for i in 0..4 {
        for j in i + 1..4 {
            out = &out * &(&v(j) - &v(i));
        }
    }
    out
}

fn vandermonde_eval(p: &[Rational; 4]) -> Rational {
    let mut out = Rational::one();
    for i in 0..4 {
        for j in i + 1..4 {
            out *= &(&p[j] - &p[i]);
        }
    }
    out
}

fn check(m: u32, n: u32) -> Result<(), DeterminantError> {
    if m >= 1 && m < n {
        Ok(())
    } else {
        Err(DeterminantError::BadIndices { m, n })
    }
}

/// One term `x^a y^b z^c t^d σ_s(z,t)` of a closed-form sum.
type SumTerm = ([u32; 4], u32);

fn f_terms(m: u32, n: u32) -> Vec<SumTerm> {
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    for j in 0..=m - 2 {
        for k in 0..n - m {
            for r in 0..=j {
                for s in j + 1..m + k {
                    out.push(([n - 3 - j - k, m + j + k - r - s - 1, r, r], s - r - 1));
                }
            }
        }
    }
    out
}

fn g_terms(m: u32, n: u32) -> Vec<SumTerm> {
    let mut out = Vec::new();
    for k in m..n {
        for j in 0..m {
            for p in 0..m {
                for s in k.saturating_sub(p)..n {
                    if s + p < k {
                        continue;
                    }
                    for r in 0..k - j {
                        out.push(([2 * m + n - 3 - k - p - j, n + k - 2 - r - s, j + r, j + r], p + s - j - r - 1));
                    }
                }
            }
        }
    }
    out
}

fn sum_poly(terms: &[SumTerm]) -> MultiPoly {
    let mut out = MultiPoly::zero(4);
    for (e, s) in terms {
        out = &out + &(&MultiPoly::term(4, 1, e.to_vec()) * &sigma_in(4, 2, 3, *s));
    }
    out
}

fn sum_eval(terms: &[SumTerm], p: &[Rational; 4]) -> Rational {
    let max_e = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    let max_s = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Rational>> = p
        .iter()
        .map(|v| {
            let mut row = vec![Rational::one()];
            for i in 0..max_e.max(max_s) {
                row.push(&row[i] * v);
            }
            row
        })
        .collect();
    // σ_s(z, t) = z^s + t σ_{s−1}(z, t)
    let mut sig = vec![Rational::one()];
    for s in 1..=max_s {
        sig.push(&powers[2][s] + &(&p[3] * &sig[s - 1]));
    }
    let mut counts: BTreeMap<&SumTerm, i64> = BTreeMap::new();
    for t in terms {
        *counts.entry(t).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|((e, s), c)| {
            let mono = (0..4).fold(Rational::from_int(c), |acc, i| acc * &powers[i][e[i] as usize]);
            mono * &sig[*s as usize]
        })
        .sum()
}

/// Cofactor expansion of `det[1, v, v^m, v^n]`.
pub fn f_direct(m: u32, n: u32) -> Result<MultiPoly, DeterminantError> {
    check(m, n)?;
    Ok(power_det([0, 1, m, n]))
}

/// Vandermonde product times the quadruple sum.
pub fn f_closed(m: u32, n: u32) -> Result<MultiPoly, DeterminantError> {
    check(m, n)?;
    Ok(&vandermonde() * &sum_poly(&f_terms(m, n)))
}

/// Cofactor expansion of `det[1, v^m, v^n, v^{m+n}]`.
pub fn g_direct(m: u32, n: u32) -> Result<MultiPoly, DeterminantError> {
    check(m, n)?;
    Ok(power_det([0, m, n, m + n]))
}

/// Vandermonde product times the quintuple sum.
pub fn g_closed(m: u32, n: u32) -> Result<MultiPoly, DeterminantError> {
    check(m, n)?;
    Ok(&vandermonde() * &sum_poly(&g_terms(m, n)))
}

/// The positive sum in the closed form of `F_{m,n}` (without the product).
pub fn f_sum(m: u32, n: u32) -> Result<MultiPoly, DeterminantError> {
    check(m, n)?;
    Ok(sum_poly(&f_terms(m, n)))
}

/// The positive sum in the closed form of `G_{m,n}` (without the product).
pub fn g_sum(m: u32, n: u32) -> Result<MultiPoly, DeterminantError> {
    check(m, n)?;
    Ok(sum_poly(&g_terms(m, n)))
}

pub fn f_result(m: u32, n: u32) -> Result<DetResult, DeterminantError> {
    Ok(DetResult::new(m, n, f_direct(m, n)?, f_closed(m, n)?))
}

pub fn g_result(m: u32, n: u32) -> Result<DetResult, DeterminantError> {
    Ok(DetResult::new(m, n, g_direct(m, n)?, g_closed(m, n)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    F,
    G,
}

fn exps(which: Which, m: u32, n: u32) -> [u32; 4] {
    match which {
        Which::F => [0, 1, m, n],
        Which::G => [0, m, n, m + n],
    }
}

/// The determinant at a rational point, by exact elimination.
pub fn direct_eval(which: Which, m: u32, n: u32, p: &[Rational; 4]) -> Result<Rational, DeterminantError> {
    check(m, n)?;
    let e = exps(which, m, n);
    let rows = p.iter().map(|v| e.iter().map(|&k| v.pow(k as i64)).collect()).collect();
    Ok(RatMatrix::from_rows(rows).det())
}

/// The closed form at a rational point, without expanding polynomials.
pub fn closed_eval(which: Which, m: u32, n: u32, p: &[Rational; 4]) -> Result<Rational, DeterminantError> {
    check(m, n)?;
    let terms = match which {
        Which::F => f_terms(m, n),
        Which::G => g_terms(m, n),
    };
    Ok(vandermonde_eval(p) * sum_eval(&terms, p))
}

/// Number of points at which direct and closed forms disagree.
pub fn random_point_mismatches(
    which: Which,
    m: u32,
    n: u32,
    points: &[[Rational; 4]],
    exec: Exec,
) -> Result<usize, DeterminantError> {
    check(m, n)?;
    let agree = exec.try_map(points, |p| -> Result<bool, DeterminantError> {
        Ok(direct_eval(which, m, n, p)? == closed_eval(which, m, n, p)?)
    })?;
    Ok(agree.into_iter().filter(|a| !a).count())
}

/// The support the certificate matrix is built on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertSupport {
    Beta(BetaSupport),
    Points(Support3),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub points: [Point; 4],
    /// `(b, a)` with `k = (b/a) j`, reduced.
    pub slope: (u32, u32),
    /// `"y"` for rows `[1, β^j, β^k, β^{j+k}]`, `"x"` for `[1, A_j, A_k, A_j A_k]`.
    pub form: String,
    pub det: Rational,
    pub forced_independent: bool,
    pub nullspace_dim: usize,
    /// Sign predicted by the `G_{a,b}` factorization (y-form only).
    pub predicted_sign: Option<i32>,
    /// `±G_{a,b}(β^{j_i/a})` when those arguments are rational.
    pub g_value: Option<Rational>,
}

impl IndependenceCertificate {
    pub fn sign_matches(&self) -> Option<bool> {
        self.predicted_sign.map(|s| s == self.det.signum())
    }
}

fn permutation_sign(keys: &[u32]) -> i32 {
    let mut sign = 1;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] > keys[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Builds the 4×4 matrix of the membership equations at four points on
/// `k = (b/a) j` and decides whether only the zero witness satisfies them.
pub fn independence_certificate(
    points: [Point; 4],
    support: &CertSupport,
) -> Result<IndependenceCertificate, DeterminantError> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 4 || points.iter().any(|&(j, k)| j == 0 || k == 0) {
        return Err(DeterminantError::BadPoints);
    }
    let (j0, k0) = points[0];
    let g = j0.gcd(&k0);
    let (b, a) = (k0 / g, j0 / g);
    if points.iter().any(|&(j, k)| k as u64 * a as u64 != j as u64 * b as u64) {
        return Err(DeterminantError::NotOnLine);
    }
    if a == b {
        return Err(DeterminantError::SlopeOne);
    }
    let beta = match support {
        CertSupport::Beta(bs) => Some(bs.clone()),
        CertSupport::Points(s) => s.beta_form(),
    };
    let rows: Vec<Vec<Rational>>;
    let form;
    if let Some(bs) = &beta {
        let bt = bs.beta();
        rows = points
            .iter()
            .map(|&(j, k)| vec![Rational::one(), bt.pow(j as i64), bt.pow(k as i64), bt.pow((j + k) as i64)])
            .collect();
        form = "y";
    } else {
        let CertSupport::Points(s) = support else { unreachable!() };
        let seq = ASequence::new(s)?;
        rows = points
            .iter()
            .map(|&(j, k)| {
                let (aj, ak) = (seq.get(j), seq.get(k));
                let ajk = &aj * &ak;
                vec![Rational::one(), aj, ak, ajk]
            })
            .collect();
        form = "x";
    }
    let mat = RatMatrix::from_rows(rows);
    let det = mat.det();
    let nullspace_dim = mat.nullspace().len();
    let (predicted_sign, g_value) = match &beta {
        Some(bs) => {
            let js: Vec<u32> = points.iter().map(|p| p.0).collect();
            let orient = if a > b { -1 } else { 1 };
            let sign = permutation_sign(&js) * orient;
            let g_value = if js.iter().all(|j| j % a == 0) {
                let mut order: Vec<u32> = js.clone();
                order.sort_unstable();
                let u: Vec<Rational> = order.iter().map(|j| bs.beta().pow((j / a) as i64)).collect();
                let u = [u[0].clone(), u[1].clone(), u[2].clone(), u[3].clone()];
                let (lo, hi) = (a.min(b), a.max(b));
                Some(closed_eval(Which::G, lo, hi, &u)? * Rational::from(sign as i64))
            } else {
                None
            };
            (Some(sign), g_value)
        }
        None => (None, None),
    };
    Ok(IndependenceCertificate {
        points,
        slope: (b, a),
        form: form.to_string(),
        forced_independent: !det.is_zero(),
        det,
        nullspace_dim,
        predicted_sign,
        g_value,
    })
}

//! Seeded run of the library's invariants, used by `uncorrset selftest`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{construct, Family, SlopeLineParams};
use crate::determinants::{
    f_result, g_result, independence_certificate, random_point_mismatches, sigma_diff_identity, CertSupport, Which,
};
use crate::engine::{
    classify_symmetric, condition_lhs, enumerate_box_with, is_uncorrelated, ASequence, Lattice, Limits, Point, SetKind,
    Witness,
};
use crate::model::{rescale, BetaSupport, JointTable, OffsetVector, Support3};
use crate::numeric::Rational;
use crate::par::Exec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn random_rational(rng: &mut impl Rng, span: i64, max_den: i64) -> Rational {
    Rational::frac(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

/// Three distinct positive rationals in increasing order.
pub fn random_positive_support(rng: &mut impl Rng) -> Support3 {
    loop {
        let mut pts: Vec<Rational> =
            (0..3).map(|_| Rational::frac(rng.gen_range(1..=30), rng.gen_range(1..=6))).collect();
        pts.sort();
        pts.dedup();
        if pts.len() == 3 {
            return Support3::new([pts[0].clone(), pts[1].clone(), pts[2].clone()]).expect("ordered positive");
        }
    }
}

pub fn random_offsets(rng: &mut impl Rng) -> OffsetVector {
    OffsetVector::from_rationals([(); 4].map(|_| random_rational(rng, 9, 5)))
}

fn check(name: &str, f: impl FnOnce() -> Result<String, String>) -> CheckResult {
    match f() {
        Ok(detail) => CheckResult { name: name.into(), passed: true, detail },
        Err(detail) => CheckResult { name: name.into(), passed: false, detail },
    }
}

fn oracle_equivalence(rng: &mut ChaCha8Rng, exec: Exec) -> Result<String, String> {
    let supports: Vec<Support3> = (0..20).map(|_| random_positive_support(rng)).collect();
    let cases: Vec<(Support3, OffsetVector)> =
        (0..200).map(|i| (supports[i % supports.len()].clone(), random_offsets(rng))).collect();
    let mismatches: usize = exec
        .map(&cases, |(s, x)| {
            let seq = ASequence::new(s).expect("positive");
            let x = if x.is_zero() { OffsetVector::ints([1, 0, 0, 0]) } else { x.clone() };
            let t = JointTable::from_offsets(&rescale(&x).expect("nonzero"), s.clone(), s.clone()).expect("valid");
            let mut bad = 0;
            for j in 1..=10 {
                for k in 1..=10 {
                    let lhs_zero = condition_lhs(&x, &seq, j, k).expect("rational").is_zero();
                    if lhs_zero != is_uncorrelated(&t, j, k) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .into_iter()
        .sum();
    if mismatches == 0 {
        Ok("200 offset vectors on 20 supports, 100 cells each".into())
    } else {
        Err(format!("{mismatches} disagreeing cells"))
    }
}

fn golden_families() -> Vec<(Family, SetKind)> {
    let s = Support3::ints(1, 2, 3).expect("support");
    let bs = BetaSupport::new(1.into(), 2.into()).expect("beta");
    let mut out = vec![(Family::Empty { support: s.clone() }, SetKind::Empty)];
    for (j, k) in [(1, 1), (2, 3), (5, 7)] {
        out.push((Family::Singleton { support: s.clone(), j, k }, SetKind::Finite(vec![(j, k)])));
    }
    for (p1, p2) in [((1, 2), (2, 1)), ((2, 5), (4, 3))] {
        out.push((Family::TwoPoint { support: s.clone(), p1, p2 }, SetKind::finite([p1, p2]).expect("points")));
    }
    for i in 1..=3 {
        out.push((Family::Vline { support: s.clone(), j: i }, SetKind::VLine(i)));
        out.push((Family::Hline { support: s.clone(), k: i }, SetKind::HLine(i)));
    }
    out.push((Family::Cross { support: s.clone(), j: 2, k: 3 }, SetKind::Cross(2, 3)));
    out.push((Family::Diagonal { support: s }, SetKind::Diagonal));
    for m in [2, 4, 7] {
        out.push((Family::Antidiagonal { support: bs.clone(), m }, SetKind::AntiDiagonal(m)));
    }
    out
}

fn goldens(exec: Exec) -> Result<String, String> {
    let fams = golden_families();
    let limits = Limits::default().with_exec(exec);
    let mut global = 0;
    for (fam, kind) in &fams {
        let c = construct(fam, (16, 16)).map_err(|e| format!("{fam:?}: {e}"))?;
        let found = enumerate_box_with(&c.witness, 16, 16, &limits).map_err(|e| e.to_string())?;
        if found != kind.in_box(16, 16) || c.descriptor.kind != *kind {
            return Err(format!("{kind} does not match its enumeration"));
        }
        if c.descriptor.certificate == crate::engine::Certificate::GlobalAnalytic {
            global += 1;
        }
    }
    Ok(format!("{} constructions exact on 16x16, {global} with a global certificate", fams.len()))
}

fn determinants(rng: &mut ChaCha8Rng, exec: Exec) -> Result<String, String> {
    for k in 0..=12 {
        if !sigma_diff_identity(k) {
            return Err(format!("sigma difference identity fails at k = {k}"));
        }
    }
    let mut pairs = Vec::new();
    for n in 3..=7 {
        for m in 2..n {
            pairs.push((Which::F, m, n));
        }
    }
    for n in 2..=6 {
        for m in 1..n {
            pairs.push((Which::G, m, n));
        }
    }
    let equal = exec.map(&pairs, |&(w, m, n)| match w {
        Which::F => f_result(m, n).map(|r| r.equal).unwrap_or(false),
        Which::G => g_result(m, n).map(|r| r.equal).unwrap_or(false),
    });
    if let Some(i) = equal.iter().position(|e| !e) {
        return Err(format!("symbolic identity fails for {:?}", pairs[i]));
    }
    let points: Vec<[Rational; 4]> = (0..100)
        .map(|_| loop {
            let p = [(); 4].map(|_| random_rational(rng, 12, 7));
            let distinct: BTreeSet<&Rational> = p.iter().collect();
            if distinct.len() == 4 {
                break p;
            }
        })
        .collect();
    for (w, m, n) in [(Which::F, 8, 10), (Which::G, 7, 9), (Which::G, 9, 10)] {
        let bad = random_point_mismatches(w, m, n, &points, exec).map_err(|e| e.to_string())?;
        if bad != 0 {
            return Err(format!("{w:?}({m},{n}) disagrees at {bad} points"));
        }
    }
    Ok(format!("{} symbolic identities, 300 random-point checks", pairs.len()))
}

fn slope_line(exec: Exec) -> Result<String, String> {
    let limits = Limits::default().with_exec(exec);
    let p = SlopeLineParams::at_or_above(2, 1.into(), 2.into()).map_err(|e| e.to_string())?;
    let c = construct(&Family::Slopeline { params: p }, (12, 12)).map_err(|e| e.to_string())?;
    if c.descriptor.certificate != crate::engine::Certificate::GlobalAnalytic {
        return Err("beta = 2 slope line lacks a global certificate".into());
    }
    let star = SlopeLineParams::beta_star(2, 9, 1.into()).map_err(|e| e.to_string())?;
    let c = construct(&Family::Slopeline { params: star }, (12, 12)).map_err(|e| e.to_string())?;
    let found = enumerate_box_with(&c.witness, 12, 12, &limits).map_err(|e| e.to_string())?;
    let want: Vec<Point> = vec![(1, 2), (2, 4), (3, 6), (4, 9)];
    if !want.iter().all(|p| found.contains(p)) || found.len() == 144 {
        return Err(format!("beta* enumeration {found:?}"));
    }
    Ok("slope 2 at beta = 2 certified; beta*(2, 9) adds (4, 9)".into())
}

fn independence() -> Result<String, String> {
    let bs = BetaSupport::new(1.into(), 2.into()).expect("beta");
    let c = independence_certificate([(1, 2), (2, 4), (3, 6), (4, 8)], &CertSupport::Beta(bs))
        .map_err(|e| e.to_string())?;
    if c.forced_independent && c.nullspace_dim == 0 && c.sign_matches() == Some(true) {
        Ok(format!("det = {}", c.det))
    } else {
        Err(format!("{c:?}"))
    }
}

fn symmetric() -> Result<String, String> {
    let s = Support3::symmetric(1.into()).expect("support");
    let all = classify_symmetric(&JointTable::independent(s.clone(), s.clone())).map_err(|e| e.to_string())?;
    if all.kind != SetKind::All {
        return Err(format!("independence table gave {}", all.kind));
    }
    for bits in 0u8..15 {
        let set: BTreeSet<Lattice> = Lattice::ALL.into_iter().filter(|l| bits & (1 << (l.index() - 1)) != 0).collect();
        let c = construct(&Family::Lattice { alpha: 1.into(), lattices: set.clone() }, (8, 8))
            .map_err(|e| e.to_string())?;
        let t = c.table.ok_or("no table")?;
        let got = classify_symmetric(&t).map_err(|e| e.to_string())?;
        if got.kind != SetKind::lattices(set) {
            return Err(format!("lattice witness {bits:04b} classified as {}", got.kind));
        }
    }
    Ok("all 16 lattice unions classified".into())
}

fn structural(exec: Exec) -> Result<String, String> {
    let limits = Limits::default().with_exec(exec);
    for (fam, _) in golden_families() {
        let c = construct(&fam, (10, 10)).map_err(|e| e.to_string())?;
        let Some(t) = c.table.as_ref() else { return Err("no table".into()) };
        let w = Witness::table(t.clone());
        let e = enumerate_box_with(&w, 10, 10, &limits).map_err(|e| e.to_string())?;
        let et = enumerate_box_with(&w.transposed(), 10, 10, &limits).map_err(|e| e.to_string())?;
        let mut flipped: Vec<Point> = e.iter().map(|&(j, k)| (k, j)).collect();
        flipped.sort_unstable();
        if flipped != et {
            return Err(format!("{fam:?}: transposition symmetry fails"));
        }
        for j in 1..=10 {
            let col: Vec<u32> = e.iter().filter(|p| p.0 == j).map(|p| p.1).collect();
            if col.len() >= 2 && col.len() != 10 {
                return Err(format!("{fam:?}: partial column {j}"));
            }
        }
    }
    Ok("tables valid, transposition and column implication hold".into())
}

/// Runs every check with the given seed.
pub fn run(seed: u64, exec: Exec) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        check("oracle equivalence", || oracle_equivalence(&mut rng, exec)),
        check("construction golden sets", || goldens(exec)),
        check("determinant identities", || determinants(&mut rng, exec)),
        check("slope-line threshold, m = 2", || slope_line(exec)),
        check("four points force independence", independence),
        check("symmetric-support classification", symmetric),
        check("structural invariants", || structural(exec)),
    ];
    SelftestReport { seed, checks }
}

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use uncorrset::constructions::{
    beta0, beta0_poly, beta_star, construct, p_poly, Construction, Family, SlopeLineParams,
};
use uncorrset::determinants::{f_result, g_result, independence_certificate, CertSupport};
use uncorrset::engine::{
    classify_symmetric, enumerate_box_with, verify_claim_with, Certificate, Lattice, Limits, Point, SetDescriptor,
    SetKind, Witness,
};
use uncorrset::model::{BetaSupport, JointTable, Support3};
use uncorrset::numeric::{default_width, Rational};
use uncorrset::par::Exec;
use uncorrset::selftest;

#[derive(Parser)]
#[command(name = "uncorrset", version, about = "Uncorrelatedness sets of three-point uniform pairs")]
struct Cli {
    /// Evaluate cells on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    Empty,
    Singleton,
    TwoPoint,
    Vline,
    Hline,
    Cross,
    Diagonal,
    Antidiagonal,
    Slopeline,
    Lattice,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DetKind {
    F,
    G,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a witness for a family.
    Construct {
        family: FamilyName,
        /// Support points `a,b,c`.
        #[arg(long)]
        support: Option<String>,
        /// Scale of a geometric support `(α, αβ, αβ²)`.
        #[arg(long)]
        alpha: Option<String>,
        /// Ratio of a geometric support.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// First point `j,k` of a two-point set.
        #[arg(long)]
        p1: Option<String>,
        /// Second point `j,k` of a two-point set.
        #[arg(long)]
        p2: Option<String>,
        /// Anti-diagonal sum or slope.
        #[arg(long)]
        m: Option<u32>,
        /// Slope line through `(4, K)` at the matching ratio.
        #[arg(long)]
        star_k: Option<u32>,
        /// Parity lattices, e.g. `1,3`.
        #[arg(long)]
        lattices: Option<String>,
        #[arg(long = "box", default_value = "16x16")]
        box_size: String,
    },
    /// List the uncorrelated cells of a witness, construction or table.
    Enumerate {
        /// JSON input; standard input when absent.
        input: Option<PathBuf>,
        #[arg(long = "box", default_value = "16x16")]
        box_size: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a claimed set against a witness.
    Verify {
        #[arg(long)]
        witness: PathBuf,
        /// Set in text form, e.g. `cross:2,3` or `lattice:1,4`.
        #[arg(long)]
        descriptor: String,
        #[arg(long = "box", default_value = "16x16")]
        box_size: String,
    },
    /// Classify a table on `{-a, 0, a}` as a union of parity lattices.
    Classify { input: Option<PathBuf> },
    /// Isolate the root of `β^{m+1} − β² − β − 1` above 1.
    Beta0 {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long)]
        width: Option<String>,
    },
    /// Isolate the ratio at which `(4, k)` joins the slope-`m` line.
    Betastar {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        width: Option<String>,
    },
    /// Compare a determinant with its closed form.
    Det {
        #[arg(value_enum, ignore_case = true)]
        which: DetKind,
        m: u32,
        n: u32,
        /// Print only equality and term counts.
        #[arg(long)]
        summary: bool,
    },
    /// Certificate that four points on a line force independence.
    IndepCert {
        /// Four points `j,k;j,k;j,k;j,k`.
        #[arg(long, default_value = "1,2;2,4;3,6;4,8")]
        points: String,
        #[arg(long)]
        support: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Run the seeded invariant suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Ok,
    Negative,
}

fn rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

fn support(s: &str) -> Result<Support3> {
    let pts: Vec<Rational> = s.split(',').map(rational).collect::<Result<_>>()?;
    let pts: [Rational; 3] = pts.try_into().map_err(|_| anyhow!("support needs exactly three points"))?;
    Ok(Support3::new(pts)?)
}

fn point(s: &str) -> Result<Point> {
    let (j, k) = s.split_once(',').ok_or_else(|| anyhow!("point {s:?} is not j,k"))?;
    Ok((j.trim().parse()?, k.trim().parse()?))
}

fn box_size(s: &str) -> Result<(u32, u32)> {
    let (j, k) = s.split_once(['x', 'X']).ok_or_else(|| anyhow!("box {s:?} is not JxK"))?;
    Ok((j.trim().parse()?, k.trim().parse()?))
}

fn width(w: &Option<String>) -> Result<Rational> {
    let w = match w {
        Some(s) => rational(s)?,
        None => default_width(),
    };
    if w.signum() <= 0 {
        bail!("width must be positive");
    }
    Ok(w)
}

fn beta_support(support_arg: &Option<String>, alpha: &Option<String>, beta: &Option<String>) -> Result<BetaSupport> {
    if let Some(b) = beta {
        let a = alpha.as_deref().map(rational).transpose()?.unwrap_or_else(Rational::one);
        return Ok(BetaSupport::new(a, rational(b)?)?);
    }
    let s = support(support_arg.as_deref().ok_or_else(|| anyhow!("needs --beta or --support"))?)?;
    s.beta_form().ok_or_else(|| anyhow!("support {s} is not of the form (a, ab, ab^2)"))
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Accepts a construction, a bare witness or a joint table.
fn parse_witness(text: &str) -> Result<Witness> {
    let value: serde_json::Value = serde_json::from_str(text).context("input is not JSON")?;
    if value.get("witness").is_some() {
        let c: Construction = serde_json::from_value(value).context("malformed construction")?;
        return Ok(c.witness);
    }
    if value.get("form").is_some() {
        return serde_json::from_value(value).context("malformed witness");
    }
    let t: JointTable = serde_json::from_value(value).context("input is neither a witness nor a table")?;
    Ok(Witness::table(t))
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

#[allow(clippy::too_many_arguments)]
fn family(
    name: FamilyName,
    support_arg: &Option<String>,
    alpha: &Option<String>,
    beta: &Option<String>,
    j: Option<u32>,
    k: Option<u32>,
    p1: &Option<String>,
    p2: &Option<String>,
    m: Option<u32>,
    star_k: Option<u32>,
    lattices: &Option<String>,
) -> Result<Family> {
    let s = || -> Result<Support3> { support(support_arg.as_deref().unwrap_or("1,2,3")) };
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| anyhow!("{flag} is required"));
    Ok(match name {
        FamilyName::Empty => Family::Empty { support: s()? },
        FamilyName::Singleton => Family::Singleton { support: s()?, j: need(j, "--j")?, k: need(k, "--k")? },
        FamilyName::TwoPoint => Family::TwoPoint {
            support: s()?,
            p1: point(p1.as_deref().ok_or_else(|| anyhow!("--p1 is required"))?)?,
            p2: point(p2.as_deref().ok_or_else(|| anyhow!("--p2 is required"))?)?,
        },
        FamilyName::Vline => Family::Vline { support: s()?, j: need(j, "--j")? },
        FamilyName::Hline => Family::Hline { support: s()?, k: need(k, "--k")? },
        FamilyName::Cross => Family::Cross { support: s()?, j: need(j, "--j")?, k: need(k, "--k")? },
        FamilyName::Diagonal => Family::Diagonal { support: s()? },
        FamilyName::Antidiagonal => {
            Family::Antidiagonal { support: beta_support(support_arg, alpha, beta)?, m: need(m, "--m")? }
        }
        FamilyName::Slopeline => {
            let m = need(m, "--m")?;
            let params = match star_k {
                Some(kk) => {
                    let a = alpha.as_deref().map(rational).transpose()?.unwrap_or_else(Rational::one);
                    SlopeLineParams::beta_star(m, kk, a)?
                }
                None => {
                    let bs = beta_support(support_arg, alpha, beta)?;
                    SlopeLineParams::at_or_above(m, bs.alpha().clone(), bs.beta().clone())?
                }
            };
            Family::Slopeline { params }
        }
        FamilyName::Lattice => {
            let alpha = alpha.as_deref().map(rational).transpose()?.unwrap_or_else(Rational::one);
            let mut set = BTreeSet::new();
            for part in lattices.as_deref().unwrap_or("").split(',').filter(|p| !p.trim().is_empty()) {
                let i: u8 = part.trim().parse()?;
                set.insert(Lattice::from_index(i).ok_or_else(|| anyhow!("lattice index {i} is not in 1..=4"))?);
            }
            Family::Lattice { alpha, lattices: set }
        }
    })
}

#[derive(Serialize)]
struct Interval {
    poly: String,
    lo: Rational,
    hi: Rational,
    approx: f64,
}

#[derive(Serialize)]
struct PointList {
    #[serde(rename = "box")]
    box_size: (u32, u32),
    points: Vec<Point>,
}

fn run(cli: Cli) -> Result<Outcome> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let limits = Limits::from_env().with_exec(exec);
    match cli.command {
        Command::Construct { family: name, support, alpha, beta, j, k, p1, p2, m, star_k, lattices, box_size: b } => {
            let fam = family(name, &support, &alpha, &beta, j, k, &p1, &p2, m, star_k, &lattices)?;
            let c = construct(&fam, box_size(&b)?)?;
            print_json(&c)?;
            Ok(Outcome::Ok)
        }
        Command::Enumerate { input, box_size: b, format } => {
            let w = parse_witness(&read_input(&input)?)?;
            let (jm, km) = box_size(&b)?;
            let points = enumerate_box_with(&w, jm, km, &limits)?;
            match format {
                Format::Json => print_json(&PointList { box_size: (jm, km), points })?,
                Format::Csv => {
                    let mut csv = String::from("j,k");
                    for (j, k) in points {
                        csv.push_str(&format!("\n{j},{k}"));
                    }
                    emit(&csv)?;
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { witness, descriptor, box_size: b } => {
            let w = parse_witness(&read_input(&Some(witness))?)?;
            let kind: SetKind = descriptor.parse()?;
            let (jm, km) = box_size(&b)?;
            let claim = SetDescriptor::new(kind, Certificate::BoxVerified(jm, km));
            let report = verify_claim_with(&w, &claim, jm, km, &limits)?;
            print_json(&report)?;
            Ok(if report.is_match() { Outcome::Ok } else { Outcome::Negative })
        }
        Command::Classify { input } => {
            let w = parse_witness(&read_input(&input)?)?;
            let table = w.realize()?.ok_or_else(|| anyhow!("witness has no rational or quadratic table"))?;
            print_json(&classify_symmetric(&table)?)?;
            Ok(Outcome::Ok)
        }
        Command::Beta0 { m, width: w } => {
            let (lo, hi) = beta0(m, &width(&w)?)?;
            let approx = lo.midpoint(&hi).to_f64();
            print_json(&Interval { poly: beta0_poly(m).to_string(), lo, hi, approx })?;
            Ok(Outcome::Ok)
        }
        Command::Betastar { m, k, width: w } => {
            let (lo, hi) = beta_star(m, k, &width(&w)?)?;
            let approx = lo.midpoint(&hi).to_f64();
            print_json(&Interval { poly: p_poly(m, k).to_string(), lo, hi, approx })?;
            Ok(Outcome::Ok)
        }
        Command::Det { which, m, n, summary } => {
            let r = match which {
                DetKind::F => f_result(m, n)?,
                DetKind::G => g_result(m, n)?,
            };
            let equal = r.equal;
            if summary {
                print_json(&r.summary())?;
            } else {
                print_json(&r)?;
            }
            Ok(if equal { Outcome::Ok } else { Outcome::Negative })
        }
        Command::IndepCert { points, support: s, alpha, beta } => {
            let pts: Vec<Point> = points.split(';').map(point).collect::<Result<_>>()?;
            let pts: [Point; 4] = pts.try_into().map_err(|_| anyhow!("exactly four points are required"))?;
            let cs = match (&s, &beta) {
                (Some(sp), None) => CertSupport::Points(support(sp)?),
                (None, None) => CertSupport::Beta(BetaSupport::new(Rational::one(), Rational::from(2))?),
                _ => CertSupport::Beta(beta_support(&s, &alpha, &beta)?),
            };
            let cert = independence_certificate(pts, &cs)?;
            print_json(&cert)?;
            Ok(if cert.forced_independent { Outcome::Ok } else { Outcome::Negative })
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed, exec);
            print_json(&report)?;
            Ok(if report.all_passed() { Outcome::Ok } else { Outcome::Negative })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

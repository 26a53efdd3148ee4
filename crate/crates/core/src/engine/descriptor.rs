use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{EngineError, Point};

/// One of the four parity sublattices of ℕ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Lattice {
    /// even × even
    A1,
    /// even × odd
    A2,
    /// odd × even
    A3,
    /// odd × odd
    A4,
}

impl Lattice {
    pub const ALL: [Lattice; 4] = [Lattice::A1, Lattice::A2, Lattice::A3, Lattice::A4];

    pub fn of(p: Point) -> Lattice {
        match (p.0.is_multiple_of(2), p.1.is_multiple_of(2)) {
            (true, true) => Lattice::A1,
            (true, false) => Lattice::A2,
            (false, true) => Lattice::A3,
            (false, false) => Lattice::A4,
        }
    }

    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_index(i: u8) -> Option<Lattice> {
        Lattice::ALL.get((i as usize).checked_sub(1)?).copied()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.index())
    }
}

/// A subset of ℕ² described symbolically.
///
/// Text form, as accepted by [`FromStr`]:
/// `empty`, `all`, `diagonal`, `vline:J`, `hline:K`, `cross:J,K`,
/// `antidiag:M`, `slope:M` (the points `(1,M),(2,2M),(3,3M)`),
/// `slope:M;J,K;...` (same plus extra points), `finite:J,K;J,K;...`,
/// `lattice:1,3` (union of parity lattices by index).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SetKind {
    Empty,
    Finite(Vec<Point>),
    VLine(u32),
    HLine(u32),
    Cross(u32, u32),
    Diagonal,
    AntiDiagonal(u32),
    SlopeLine { m: u32, points: Vec<Point> },
    LatticeUnion(BTreeSet<Lattice>),
    All,
}

fn normalize(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort_unstable();
    pts.dedup();
    pts
}

impl SetKind {
    /// A finite set; sorted and deduplicated, empty collapses to `Empty`.
    pub fn finite(points: impl IntoIterator<Item = Point>) -> Result<SetKind, EngineError> {
        let pts = normalize(points.into_iter().collect());
        if pts.iter().any(|&(j, k)| j == 0 || k == 0) {
            return Err(EngineError::ZeroExponent);
        }
        Ok(if pts.is_empty() { SetKind::Empty } else { SetKind::Finite(pts) })
    }

    /// `{(1,m),(2,2m),(3,3m)}` plus `extra`.
    pub fn slope(m: u32, extra: impl IntoIterator<Item = Point>) -> SetKind {
        let mut pts: Vec<Point> = (1..=3).map(|i| (i, i * m)).collect();
        pts.extend(extra);
        SetKind::SlopeLine { m, points: normalize(pts) }
    }

    /// A union of parity lattices; no lattice is `Empty`, all four is `All`.
    pub fn lattices(set: impl IntoIterator<Item = Lattice>) -> SetKind {
        let s: BTreeSet<Lattice> = set.into_iter().collect();
        match s.len() {
            0 => SetKind::Empty,
            4 => SetKind::All,
            _ => SetKind::LatticeUnion(s),
        }
    }

    pub fn contains(&self, (j, k): Point) -> bool {
        if j == 0 || k == 0 {
            return false;
        }
        match self {
            SetKind::Empty => false,
            SetKind::All => true,
            SetKind::Finite(pts) | SetKind::SlopeLine { points: pts, .. } => pts.binary_search(&(j, k)).is_ok(),
            SetKind::VLine(a) => j == *a,
            SetKind::HLine(b) => k == *b,
            SetKind::Cross(a, b) => j == *a || k == *b,
            SetKind::Diagonal => j == k,
            SetKind::AntiDiagonal(m) => j + k == *m,
            SetKind::LatticeUnion(s) => s.contains(&Lattice::of((j, k))),
        }
    }

    /// The set intersected with `[1..j]×[1..k]`, sorted.
    pub fn in_box(&self, j: u32, k: u32) -> Vec<Point> {
        super::box_points(j, k).into_iter().filter(|p| self.contains(*p)).collect()
    }

    /// The descriptor of the transposed set.
    pub fn transposed(&self) -> SetKind {
        let flip = |pts: &[Point]| normalize(pts.iter().map(|&(a, b)| (b, a)).collect());
        match self {
            SetKind::Finite(p) => SetKind::Finite(flip(p)),
            SetKind::VLine(j) => SetKind::HLine(*j),
            SetKind::HLine(k) => SetKind::VLine(*k),
            SetKind::Cross(j, k) => SetKind::Cross(*k, *j),
            SetKind::SlopeLine { points, .. } => SetKind::Finite(flip(points)),
            SetKind::LatticeUnion(s) => SetKind::lattices(s.iter().map(|l| match l {
                Lattice::A2 => Lattice::A3,
                Lattice::A3 => Lattice::A2,
                other => *other,
            })),
            other => other.clone(),
        }
    }
}

fn fmt_points(pts: &[Point]) -> String {
    pts.iter().map(|(j, k)| format!("{j},{k}")).collect::<Vec<_>>().join(";")
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::Empty => write!(f, "empty"),
            SetKind::All => write!(f, "all"),
            SetKind::Diagonal => write!(f, "diagonal"),
            SetKind::VLine(j) => write!(f, "vline:{j}"),
            SetKind::HLine(k) => write!(f, "hline:{k}"),
            SetKind::Cross(j, k) => write!(f, "cross:{j},{k}"),
            SetKind::AntiDiagonal(m) => write!(f, "antidiag:{m}"),
            SetKind::Finite(p) => write!(f, "finite:{}", fmt_points(p)),
            SetKind::SlopeLine { m, points } => {
                let extra: Vec<Point> = points.iter().copied().filter(|&(j, k)| !(j <= 3 && k == j * m)).collect();
                if extra.is_empty() {
                    write!(f, "slope:{m}")
                } else {
                    write!(f, "slope:{m};{}", fmt_points(&extra))
                }
            }
            SetKind::LatticeUnion(s) => {
                let idx: Vec<String> = s.iter().map(|l| l.index().to_string()).collect();
                write!(f, "lattice:{}", idx.join(","))
            }
        }
    }
}

fn parse_u32(s: &str, whole: &str) -> Result<u32, EngineError> {
    s.trim().parse().map_err(|_| EngineError::BadDescriptor(whole.to_string()))
}

fn parse_point(s: &str, whole: &str) -> Result<Point, EngineError> {
    let (a, b) = s.split_once(',').ok_or_else(|| EngineError::BadDescriptor(whole.to_string()))?;
    Ok((parse_u32(a, whole)?, parse_u32(b, whole)?))
}

fn parse_points(s: &str, whole: &str) -> Result<Vec<Point>, EngineError> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_point(p, whole)).collect()
}

fn need<'a>(r: Option<&'a str>, whole: &str) -> Result<&'a str, EngineError> {
    r.ok_or_else(|| EngineError::BadDescriptor(whole.to_string()))
}

impl FromStr for SetKind {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let whole = s;
        let bad = || EngineError::BadDescriptor(whole.to_string());
        let (head, rest) = match s.trim().split_once(':') {
            Some((h, r)) => (h.trim().to_ascii_lowercase(), Some(r)),
            None => (s.trim().to_ascii_lowercase(), None),
        };
        let pos = |v: u32| if v == 0 { Err(EngineError::ZeroExponent) } else { Ok(v) };
        Ok(match head.as_str() {
            "empty" => SetKind::Empty,
            "all" => SetKind::All,
            "diagonal" => SetKind::Diagonal,
            "vline" => SetKind::VLine(pos(parse_u32(need(rest, whole)?, whole)?)?),
            "hline" => SetKind::HLine(pos(parse_u32(need(rest, whole)?, whole)?)?),
            "cross" => {
                let (j, k) = parse_point(need(rest, whole)?, whole)?;
                SetKind::Cross(pos(j)?, pos(k)?)
            }
            "antidiag" => SetKind::AntiDiagonal(parse_u32(need(rest, whole)?, whole)?),
            "finite" => SetKind::finite(parse_points(need(rest, whole)?, whole)?)?,
            "slope" => {
                let r = need(rest, whole)?;
                let (m, extra) = match r.split_once(';') {
                    Some((m, e)) => (m, parse_points(e, whole)?),
                    None => (r, Vec::new()),
                };
                let m = parse_u32(m, whole)?;
                if m < 2 || extra.iter().any(|&(j, k)| j == 0 || k == 0) {
                    return Err(bad());
                }
                SetKind::slope(m, extra)
            }
            "lattice" => {
                let mut set = BTreeSet::new();
                for part in need(rest, whole)?.split(',').filter(|p| !p.trim().is_empty()) {
                    let i: u8 = part.trim().parse().map_err(|_| bad())?;
                    set.insert(Lattice::from_index(i).ok_or_else(bad)?);
                }
                SetKind::lattices(set)
            }
            _ => return Err(bad()),
        })
    }
}

impl TryFrom<String> for SetKind {
    type Error = EngineError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<SetKind> for String {
    fn from(k: SetKind) -> String {
        k.to_string()
    }
}

/// How far a set claim is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certificate {
    /// Holds on all of ℕ² by an exactly checked argument.
    GlobalAnalytic,
    /// Checked cell by cell on `[1..J]×[1..K]`.
    BoxVerified(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetDescriptor {
    pub kind: SetKind,
    pub certificate: Certificate,
}

impl SetDescriptor {
    pub fn new(kind: SetKind, certificate: Certificate) -> Self {
        SetDescriptor { kind, certificate }
    }

    pub fn global(kind: SetKind) -> Self {
        SetDescriptor { kind, certificate: Certificate::GlobalAnalytic }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.kind.contains(p)
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.certificate {
            Certificate::GlobalAnalytic => write!(f, "{} (global)", self.kind),
            Certificate::BoxVerified(j, k) => write!(f, "{} (box {j}x{k})", self.kind),
        }
    }
}

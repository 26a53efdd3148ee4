//! Membership tests, box enumeration, claim verification and the
//! classifier for symmetric supports.

mod aseq;
mod classify;
mod descriptor;
mod moments;
mod verify;
mod witness;

pub use aseq::{compute_a, ASequence};
pub use classify::{classify_symmetric, lattice_representative};
pub use descriptor::{Certificate, Lattice, SetDescriptor, SetKind};
pub use moments::{condition_lhs, covariance, is_uncorrelated, moment, y_condition_lhs};
pub use verify::{verify_claim, verify_claim_with, AnalyticCheck, UncorrReport, Verdict};
pub use witness::{enumerate_box, enumerate_box_with, AlgebraicWitness, Witness};

use thiserror::Error;

use crate::model::{ModelError, SupportKind};
use crate::numeric::NumericError;
use crate::par::Exec;

/// An exponent pair `(j, k)`.
pub type Point = (u32, u32);

/// Default cap on exponents in a box.
pub const DEFAULT_MAX_EXP: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("support kind {0:?} is not positive ordered")]
    NotPositive(SupportKind),
    #[error("exponents start at 1")]
    ZeroExponent,
    #[error("box {j}x{k} exceeds the exponent cap {cap}")]
    ExponentCap { j: u32, k: u32, cap: u32 },
    #[error("descriptor {descriptor} is incompatible with this witness: {reason}")]
    IncompatibleDescriptor { descriptor: String, reason: String },
    #[error("cannot parse set descriptor {0:?}")]
    BadDescriptor(String),
    #[error("lattice {lattice} is not constant: {point:?} disagrees with its representative")]
    LatticeInconsistent { lattice: Lattice, point: Point },
    #[error("X and Y supports differ")]
    SupportMismatch,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Enumeration settings: execution strategy and exponent cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub exec: Exec,
    pub max_exp: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { exec: Exec::default(), max_exp: DEFAULT_MAX_EXP }
    }
}

impl Limits {
    /// Defaults with `UNCORRSET_MAX_EXP` applied when it parses.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(cap) = std::env::var("UNCORRSET_MAX_EXP").ok().and_then(|v| v.trim().parse().ok()) {
            l.max_exp = cap;
        }
        l
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub(crate) fn check_box(&self, j: u32, k: u32) -> Result<(), EngineError> {
        if j == 0 || k == 0 {
            return Err(EngineError::ZeroExponent);
        }
        if j > self.max_exp || k > self.max_exp {
            return Err(EngineError::ExponentCap { j, k, cap: self.max_exp });
        }
        Ok(())
    }
}

/// All cells of `[1..j]×[1..k]` in row-major order.
pub fn box_points(j: u32, k: u32) -> Vec<Point> {
    (1..=j).flat_map(|a| (1..=k).map(move |b| (a, b))).collect()
}

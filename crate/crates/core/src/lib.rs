//! Exact construction, enumeration and verification of uncorrelatedness
//! sets for random vectors whose marginals are uniform on three points,
//! together with closed forms for two generalized Vandermonde determinants.
//!
//! Everything is computed in exact arithmetic: rationals, ℚ(√d), and real
//! algebraic numbers given by an isolating interval.

#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod determinants;
pub mod engine;
pub mod model;
pub mod numeric;
pub mod par;
pub mod selftest;

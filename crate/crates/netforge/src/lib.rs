//! Construction, exhaustive verification and exact discrepancy analysis of
//! (0,m,2)-nets in base `b`.
//!
//! A *(t,m,s)-net in base b* is a set of `b^m` points in the unit cube such
//! that every elementary b-adic interval of volume `b^(t-m)` contains exactly
//! `b^t` of them. Nets with `t = 0` are as evenly spread as a point set of
//! that size can be, which makes them the workhorse of quasi-Monte Carlo
//! integration.
//!
//! This crate builds such point sets in the plane by two routes and then
//! checks everything it claims, exactly:
//!
//! * [`greedy`] packs `b^m` grid boxes one at a time, removing from play
//!   every box that shares a volume-`b^-m` elementary interval with a chosen
//!   one. In the plane the process provably cannot get stuck; in three or
//!   more dimensions it can, and the module can search for minimal stalling
//!   prefixes.
//! * [`recursive`] stacks `b` nets of resolution `m - 1` side by side and
//!   repairs the second coordinate with per-row digit permutations. With
//!   identity permutations the classical Hammersley net falls out.
//! * [`verify`] decides the net property by exhaustive enumeration of
//!   elementary intervals, computes the minimal quality parameter, and can
//!   search for nets (or prove their absence) by backtracking.
//! * [`discrepancy`] evaluates local, star and extreme discrepancy of the
//!   produced point sets as exact rationals, plus the `O(log N / N)` bound
//!   that (0,m,2)-nets are guaranteed to satisfy.
//!
//! All coordinates are b-adic rationals `k / b^g` stored as integer
//! numerators; no floating point is involved anywhere.
//!
//! ```
//! use netforge::{recursive, verify};
//!
//! let net = recursive::hammersley(2, 3).unwrap();
//! let report = verify::is_net(&net, 0).unwrap();
//! assert!(report.passed);
//! ```

pub mod badic;
pub mod discrepancy;
pub mod error;
pub mod greedy;
pub mod netfile;
pub mod plot;
pub mod points;
pub mod rational;
pub mod recursive;
mod sampling;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default node budget for backtracking searches. Overridable per call and,
/// in the CLI, through the `NETFORGE_BUDGET` environment variable.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

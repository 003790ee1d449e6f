//! Exact and numeric machinery for spt-crank functions.
//!
//! The crate computes the crank counts N_C1(m,n) and N_C5(m,n) attached to
//! the smallest-parts function spt_omega, entirely in exact big-integer
//! arithmetic, and cross-validates them three ways: against brute-force
//! partition enumeration, against independent series identities, and
//! against circle-method asymptotics evaluated in floating point.
//!
//! Module map:
//! - [`series`]: truncated power/Laurent series over `BigInt` (the carrier
//!   for every generating function here).
//! - [`partitions`]: partition enumeration and the counting oracles that
//!   provide ground truth for small `n`.
//! - [`gen`]: the generating functions themselves, univariate and
//!   bivariate, plus the mock-modularity identity check.
//! - [`table`]: dense crank tables and streaming scans over all rows.
//! - [`analytic`]: floating-point evaluation of the auxiliary sums
//!   h_{A,B} and f_{j,a,b} near and away from the dominant poles.
//! - [`asym`]: asymptotic main terms, convergence/sign scans, Wright's
//!   integral and half-integer Bessel functions.

pub mod analytic;
pub mod asym;
pub mod bivariate;
pub mod gen;
pub mod partitions;
pub mod series;
pub mod table;

pub use num_bigint::BigInt;
pub use series::{PochCount, QSeries, SeriesError, ZQSeries};

//! Verification suites, sweeps, report emission and charting on top of
//! [`friable_core`].
//!
//! Each suite runs an exact or numeric check derived from a stated
//! inequality, identity or counterexample, over a configurable grid of
//! `(q, n, m)` points, and reports the worst case plus the empirical
//! constant that normalizes it. Exact claims fail the suite when violated;
//! empirical constants are only ever reported.

pub mod chart;
pub mod cli;
pub mod report;
pub mod suites;

pub use report::RunConfig;
pub use suites::{DeltaData, GridSpec, SuiteReport};

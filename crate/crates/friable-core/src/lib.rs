//! Exact and asymptotic machinery for friable (smooth) counting problems.
//!
//! Two families of objects are counted exactly, in arbitrary precision:
//! monic polynomials of degree `n` over `F_q` whose irreducible factors all
//! have degree at most `m`, and permutations of `S_n` whose cycles all have
//! length at most `m`. On top of the exact counters sit the analytic
//! companions that govern their asymptotics: the Dickman function `rho`, the
//! Laplace-side saddle parameter `xi`, the coefficient-extraction saddle
//! point `x` with its amplitude `Q(x)` and curvature `lambda`, and the field
//! correction factor `G_q(z)` with certified series truncation.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable the default
//! `std` feature and enable `libm` to take float math from the `libm` crate.
//!
//! Layout:
//! - [`params`]: validated `(q, n, m)` triples, prime-power detection
//! - [`census`]: exact counts of monic irreducibles, Möbius inversion,
//!   weighted divisor sums
//! - [`counts`]: exact friable counters, brute-force oracles, friability
//!   probabilities, expected largest factor/cycle, expectation gap
//! - [`dickman`]: `rho`, `xi`, the exponential integral `I`, the Laplace
//!   transform of `rho`, and the correction integral `T`
//! - [`saddle`]: saddle point `x`, power sums, `G_q` evaluation and
//!   derivatives, saddle estimates and error-envelope classification

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("friable-core needs either the `std` or the `libm` feature");

extern crate alloc;

pub mod census;
pub mod counts;
pub mod dickman;
pub mod error;
pub mod logreal;
pub mod params;
pub mod ratio;
pub mod saddle;

mod math;
mod quad;

pub use census::IrreducibleTable;
pub use counts::{FriableProfile, Kind, PermFriableTable, PolyFriableTable};
pub use error::{Error, Result};
pub use logreal::LogReal;
pub use params::{Params, PrimePower};
pub use ratio::ExactRatio;
pub use saddle::{RatioPrediction, Regime, SaddleData};

// Re-exported so downstream crates match the arbitrary-precision types
// without tracking the dependency themselves.
pub use num_bigint::{BigInt, BigUint};
pub use num_complex::Complex64;

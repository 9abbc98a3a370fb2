//! Distributed time-delay estimation under a k-bit communication budget.
//!
//! One sensor observes a white Gaussian signal `x[n]`, the other observes a
//! noisy, delayed copy `y[n] = rho * x[n - d] + sqrt(1 - rho^2) * z[n]`. The
//! encoder may send only `k` bits. Extremum encoding sends the index `J` of
//! the largest of `N = 2^k` samples, and the decoder picks the lag that
//! maximizes `y[J + lag]` over the delay spread (the maximum-index estimator,
//! MIE).
//!
//! The crate is split by role:
//!
//! - [`model`]: correlation parameters, delay sets and seeded trial generation.
//! - [`codec`]: the k-bit max-index message.
//! - [`estimators`]: MIE, the full-data cross-correlator and the 1-bit and
//!   rate-distortion benchmarks.
//! - [`bounds`]: closed-form error-probability bounds, the error exponent,
//!   Q-function bounds and the expected Gaussian maximum.
//! - [`harness`]: the parallel Monte Carlo runner, exponent fitting and CSV
//!   persistence used by the `tde` binary.

pub mod bounds;
pub mod codec;
mod error;
pub mod estimators;
pub mod harness;
pub mod model;
pub mod quadrature;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};

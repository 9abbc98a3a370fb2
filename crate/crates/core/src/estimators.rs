//! Delay estimators.
//!
//! All four estimators pick the lag in `{-d_max, ..., d_max}` that maximizes
//! some empirical correlation statistic; they differ only in what the decoder
//! is given:
//!
//! | estimator | decoder input                         | statistic                              |
//! |-----------|---------------------------------------|----------------------------------------|
//! | MIE       | max index `J` (k bits)                | `y[J + lag]`                           |
//! | MLE       | all of `x[0..N]` (unconstrained)      | `(1/N) sum x[n] y[n + lag]`            |
//! | 1-bit     | `sign(x[n])` for the first k samples  | cross-correlation of the signs         |
//! | RD        | Gaussian test-channel output, `R*N_rd = k` | cross-correlation of the reconstruction |
//!
//! Ties always break toward the smallest lag.
//!
//! The `*_counted` variants take an [`OpCounter`] that tallies
//! multiply-accumulates and comparisons; the plain versions pass `()` and
//! the counting compiles away.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::model::SignalWindow;
use crate::{Error, Result};

/// Sink for elementary operation counts.
pub trait OpCounter {
    fn add(&mut self, ops: u64);
}

impl OpCounter for () {
    #[inline(always)]
    fn add(&mut self, _: u64) {}
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount(pub u64);

impl OpCounter for OpCount {
    fn add(&mut self, ops: u64) {
        self.0 += ops;
    }
}

/// The estimators compared by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorKind {
    Mie,
    Mle,
    OneBit,
    Rd,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 4] = [Self::Mie, Self::Mle, Self::OneBit, Self::Rd];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Mie => "mie",
            Self::Mle => "mle",
            Self::OneBit => "onebit",
            Self::Rd => "rd",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "mie" => Ok(Self::Mie),
            "mle" => Ok(Self::Mle),
            "onebit" => Ok(Self::OneBit),
            "rd" => Ok(Self::Rd),
            other => Err(Error::Config(format!(
                "unknown estimator {other:?} (expected mie, mle, onebit or rd)"
            ))),
        }
    }
}

/// Correlation statistic evaluated at every lag of the delay set.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationProfile {
    d_max: u64,
    values: Vec<f64>,
}

impl CorrelationProfile {
    fn new(d_max: u64, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len() as u64, 2 * d_max + 1);
        Self { d_max, values }
    }

    pub fn d_max(&self) -> u64 {
        self.d_max
    }

    pub fn lags(&self) -> impl Iterator<Item = i64> {
        let d = self.d_max as i64;
        -d..=d
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, lag: i64) -> Option<f64> {
        let i = usize::try_from(lag + self.d_max as i64).ok()?;
        self.values.get(i).copied()
    }

    /// Lag with the largest value, smallest lag on ties.
    pub fn argmax_lag(&self) -> i64 {
        first_argmax(&self.values, &mut ()) as i64 - self.d_max as i64
    }
}

fn first_argmax<C: OpCounter>(values: &[f64], ops: &mut C) -> usize {
    let mut best = 0;
    for i in 1..values.len() {
        if values[i] > values[best] {
            best = i;
        }
    }
    ops.add(values.len() as u64);
    best
}

/// Maximum-index estimate: the lag maximizing `y[J + lag]`.
pub fn mie_estimate(y: SignalWindow<'_>, j: u64, d_max: u64) -> Result<i64> {
    mie_estimate_counted(y, j, d_max, &mut ())
}

pub fn mie_estimate_counted<C: OpCounter>(
    y: SignalWindow<'_>,
    j: u64,
    d_max: u64,
    ops: &mut C,
) -> Result<i64> {
    let (j, d) = (j as i64, d_max as i64);
    let window = y.span(j - d, j + d)?;
    Ok(first_argmax(window, ops) as i64 - d)
}

/// `y[J + lag] / E[x[J]]`, an unbiased estimate of the correlation at `lag`.
pub fn rho_hat_mie(y: SignalWindow<'_>, j: u64, lag: i64, expected_max: f64) -> Result<f64> {
    if !(expected_max > 0.0) {
        return Err(Error::NotPositive {
            what: "expected maximum",
            got: expected_max,
        });
    }
    let index = j as i64 + lag;
    let value = y.span(index, index)?[0];
    Ok(value / expected_max)
}

/// [`rho_hat_mie`] at every lag of the delay set.
pub fn mie_profile(
    y: SignalWindow<'_>,
    j: u64,
    d_max: u64,
    expected_max: f64,
) -> Result<CorrelationProfile> {
    if !(expected_max > 0.0) {
        return Err(Error::NotPositive {
            what: "expected maximum",
            got: expected_max,
        });
    }
    let (j, d) = (j as i64, d_max as i64);
    let window = y.span(j - d, j + d)?;
    Ok(CorrelationProfile::new(
        d_max,
        window.iter().map(|v| v / expected_max).collect(),
    ))
}

/// `value(lag) = (1/N) * sum_{n<N} reference[n] * y[n + lag]` with
/// `N = reference.len()`. `y` must cover `[-d_max, N - 1 + d_max]`.
pub fn cross_correlate(
    reference: &[f64],
    y: SignalWindow<'_>,
    d_max: u64,
) -> Result<CorrelationProfile> {
    cross_correlate_counted(reference, y, d_max, &mut ())
}

pub fn cross_correlate_counted<C: OpCounter>(
    reference: &[f64],
    y: SignalWindow<'_>,
    d_max: u64,
    ops: &mut C,
) -> Result<CorrelationProfile> {
    if reference.is_empty() {
        return Err(Error::Empty("reference"));
    }
    let n = reference.len();
    let d = d_max as i64;
    let span = y.span(-d, n as i64 - 1 + d)?;
    let scale = 1.0 / n as f64;
    let values = (0..span.len() - n + 1)
        .map(|offset| {
            let acc: f64 = reference
                .iter()
                .zip(&span[offset..offset + n])
                .map(|(a, b)| a * b)
                .sum();
            acc * scale
        })
        .collect::<Vec<_>>();
    ops.add((n * values.len()) as u64);
    Ok(CorrelationProfile::new(d_max, values))
}

/// Cross-correlation (maximum likelihood) estimate from the full encoder
/// observation.
pub fn mle_estimate(x: &[f64], y: SignalWindow<'_>, d_max: u64) -> Result<i64> {
    Ok(cross_correlate(x, y, d_max)?.argmax_lag())
}

/// Elementwise sign with `sign(0) = +1`; one bit per sample.
pub fn sign_quantize(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| if v < 0.0 { -1.0 } else { 1.0 })
        .collect()
}

/// Cross-correlator fed with the sign sequence.
pub fn onebit_estimate(signs: &[f64], y: SignalWindow<'_>, d_max: u64) -> Result<i64> {
    Ok(cross_correlate(signs, y, d_max)?.argmax_lag())
}

/// Output of the optimal Gaussian forward test channel at `rate` bits/sample.
#[derive(Debug, Clone, PartialEq)]
pub struct RdCompressedSignal {
    pub x_hat: Vec<f64>,
    pub rate_bits_per_sample: f64,
    /// Mean squared error `2^(-2R)`.
    pub distortion: f64,
}

/// Squared-error distortion-rate function of a unit-variance Gaussian source.
pub fn gaussian_distortion(rate: f64) -> f64 {
    (-2.0 * rate).exp2()
}

/// Number of samples the RD benchmark compresses so that `rate * n = k`.
pub fn rd_block_length(k: u32, rate: f64) -> Result<usize> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::NotPositive {
            what: "rate",
            got: rate,
        });
    }
    let n = (k as f64 / rate).round();
    if n < 1.0 || (n * rate - k as f64).abs() > 1e-9 {
        return Err(Error::BudgetSplit { rate, k });
    }
    Ok(n as usize)
}

/// Simulate rate-`rate` compression of a unit-variance Gaussian sequence:
/// `x_hat = (1 - D) x + sqrt(D (1 - D)) w` with `D = 2^(-2R)`.
pub fn rd_compress<R: Rng + ?Sized>(
    x: &[f64],
    rate: f64,
    rng: &mut R,
) -> Result<RdCompressedSignal> {
    if !(rate > 0.0) {
        return Err(Error::NotPositive {
            what: "rate",
            got: rate,
        });
    }
    let distortion = gaussian_distortion(rate);
    let gain = 1.0 - distortion;
    let noise = (distortion * gain).sqrt();
    let x_hat = if noise == 0.0 {
        x.iter().map(|v| gain * v).collect()
    } else {
        x.iter()
            .map(|v| gain * v + noise * rng.sample::<f64, _>(StandardNormal))
            .collect()
    };
    Ok(RdCompressedSignal {
        x_hat,
        rate_bits_per_sample: rate,
        distortion,
    })
}

/// Cross-correlator fed with the unit-variance-normalized reconstruction.
pub fn rd_estimate(
    compressed: &RdCompressedSignal,
    y: SignalWindow<'_>,
    d_max: u64,
) -> Result<i64> {
    let scale = 1.0 / (1.0 - compressed.distortion).sqrt();
    let normalized: Vec<f64> = compressed.x_hat.iter().map(|v| v * scale).collect();
    Ok(cross_correlate(&normalized, y, d_max)?.argmax_lag())
}

//! Seeded, parallel Monte Carlo experiments.
//!
//! Every trial draws one realization from its own random stream keyed by
//! `(master_seed, k, trial_index)`, and every requested estimator is run on
//! that same realization (a paired design). Error counts are summed, so the
//! resulting rows do not depend on the number of worker threads.

use rayon::prelude::*;

use crate::codec::{self, ExtremumMessage};
use crate::estimators::{self, EstimatorKind};
use crate::model::{self, CorrelationModel, DelaySpec};
use crate::rng;
use crate::stats::{wilson_interval, Z95};
use crate::{Error, Result};

mod config;
mod fit;
mod results;

pub use config::{parse_estimators, parse_k_values, FileConfig, KSpec};
pub use fit::{fit_exponent, write_fit, ExponentFit, FIT_HEADER, MIN_FIT_ERRORS};
pub use results::{load_results, persist_results, read_results, write_results, ResultRow, CSV_HEADER};

/// Largest message size the harness will simulate (`N = 2^k` samples per trial).
pub const MAX_K: u32 = 30;

/// Fewest trials accepted per sweep point.
pub const MIN_TRIALS: u64 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: CorrelationModel,
    pub d_max: u64,
    pub k_values: Vec<u32>,
    pub estimators: Vec<EstimatorKind>,
    /// Bits per sample for the rate-distortion benchmark.
    pub rd_rate: f64,
    pub trials: u64,
    pub master_seed: u64,
    /// Encoder block length; `2^k` when `None`.
    pub n_samples: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(model: CorrelationModel, d_max: u64, k_values: Vec<u32>) -> Self {
        Self {
            model,
            d_max,
            k_values,
            estimators: vec![EstimatorKind::Mie],
            rd_rate: 1.0,
            trials: 10_000,
            master_seed: 0,
            n_samples: None,
        }
    }

    pub fn with_estimators(mut self, estimators: &[EstimatorKind]) -> Self {
        self.estimators = estimators.to_vec();
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_rd_rate(mut self, rate: f64) -> Self {
        self.rd_rate = rate;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_values.is_empty() {
            return Err(Error::Config("k list is empty".into()));
        }
        if self.k_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("k values must be strictly increasing".into()));
        }
        if self.trials < MIN_TRIALS {
            return Err(Error::Config(format!(
                "at least {MIN_TRIALS} trials are required, got {}",
                self.trials
            )));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("no estimators selected".into()));
        }
        let mut seen = self.estimators.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.estimators.len() {
            return Err(Error::Config("duplicate estimator".into()));
        }
        for &k in &self.k_values {
            self.sweep_point(k)?;
        }
        Ok(())
    }

    /// Fully resolved parameters for message size `k`.
    pub fn sweep_point(&self, k: u32) -> Result<SweepPoint> {
        if k == 0 || k > MAX_K {
            return Err(Error::Config(format!("k = {k} outside 1..={MAX_K}")));
        }
        let n_samples = self.n_samples.unwrap_or(1usize << k);
        if n_samples == 0 || n_samples as u64 > 1u64 << k {
            return Err(Error::Config(format!(
                "n_samples = {n_samples} must be in 1..=2^{k}"
            )));
        }
        let uses = |kind| self.estimators.contains(&kind);
        if uses(EstimatorKind::OneBit) && k as usize > n_samples {
            return Err(Error::Config(format!(
                "1-bit benchmark needs k = {k} samples but only {n_samples} are observed"
            )));
        }
        let rd_block = if uses(EstimatorKind::Rd) {
            let n_rd = estimators::rd_block_length(k, self.rd_rate)?;
            if n_rd > n_samples {
                return Err(Error::Config(format!(
                    "RD benchmark block of {n_rd} samples exceeds the {n_samples} observed"
                )));
            }
            n_rd
        } else {
            0
        };
        Ok(SweepPoint {
            model: self.model,
            delay_spec: DelaySpec::new(self.d_max),
            k,
            n_samples,
            estimators: self.estimators.clone(),
            rd_rate: self.rd_rate,
            rd_block,
            master_seed: self.master_seed,
        })
    }
}

/// Parameters of a single `(k, model, d_max)` sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub model: CorrelationModel,
    pub delay_spec: DelaySpec,
    pub k: u32,
    pub n_samples: usize,
    pub estimators: Vec<EstimatorKind>,
    pub rd_rate: f64,
    pub rd_block: usize,
    pub master_seed: u64,
}

impl SweepPoint {
    /// Bits each estimator's encoder sends per trial.
    pub fn bits_used(&self, kind: EstimatorKind) -> Option<f64> {
        match kind {
            EstimatorKind::Mie => Some(self.k as f64),
            EstimatorKind::OneBit => Some(self.k as f64),
            EstimatorKind::Rd => Some(self.rd_rate * self.rd_block as f64),
            EstimatorKind::Mle => None,
        }
    }
}

/// What happened in one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial_index: u64,
    pub true_delay: i64,
    /// The max-index message, when MIE was requested.
    pub message: Option<ExtremumMessage>,
    pub estimates: Vec<(EstimatorKind, i64)>,
}

impl TrialOutcome {
    pub fn correct(&self, kind: EstimatorKind) -> Option<bool> {
        self.estimates
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|&(_, d)| d == self.true_delay)
    }
}

/// Run every estimator of `point` on realization `trial_index`.
pub fn run_trial(point: &SweepPoint, trial_index: u64) -> Result<TrialOutcome> {
    trial_inner(point, trial_index).map_err(|e| Error::Trial {
        trial: trial_index,
        source: Box::new(e),
    })
}

fn trial_inner(point: &SweepPoint, trial_index: u64) -> Result<TrialOutcome> {
    let mut rng = rng::stream(point.master_seed, point.k as u64, trial_index);
    let true_delay = model::sample_delay(point.delay_spec, &mut rng);
    let trial = model::generate_trial(
        point.model,
        point.delay_spec,
        point.n_samples,
        true_delay,
        &mut rng,
    )?;
    let x = trial.encoder_view();
    let y = trial.decoder_window();
    let d_max = point.delay_spec.d_max();

    let mut message = None;
    let mut estimates = Vec::with_capacity(point.estimators.len());
    for &kind in &point.estimators {
        let estimate = match kind {
            EstimatorKind::Mie => {
                let msg = codec::encode_max_index(x, point.k)?;
                debug_assert_eq!(msg.k(), point.k);
                let j = codec::decode_index(&msg);
                debug_assert!(x.iter().all(|&v| v <= x[j as usize]));
                message = Some(msg);
                estimators::mie_estimate(y, j, d_max)?
            }
            EstimatorKind::Mle => estimators::mle_estimate(x, y, d_max)?,
            EstimatorKind::OneBit => {
                let signs = estimators::sign_quantize(prefix(x, point.k as usize)?);
                estimators::onebit_estimate(&signs, y, d_max)?
            }
            EstimatorKind::Rd => {
                let compressed =
                    estimators::rd_compress(prefix(x, point.rd_block)?, point.rd_rate, &mut rng)?;
                estimators::rd_estimate(&compressed, y, d_max)?
            }
        };
        estimates.push((kind, estimate));
    }
    Ok(TrialOutcome {
        trial_index,
        true_delay,
        message,
        estimates,
    })
}

fn prefix(x: &[f64], len: usize) -> Result<&[f64]> {
    x.get(..len).ok_or(Error::TooSmall {
        what: "encoder block length",
        min: len as f64,
        got: x.len() as f64,
    })
}

/// Error counts per estimator (in `point.estimators` order) over
/// `0..trials`.
pub fn count_errors(point: &SweepPoint, trials: u64) -> Result<Vec<u64>> {
    let width = point.estimators.len();
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let outcome = run_trial(point, i)?;
            Ok(outcome
                .estimates
                .iter()
                .map(|&(_, d)| (d != outcome.true_delay) as u64)
                .collect::<Vec<_>>())
        })
        .try_reduce(
            || vec![0; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )
}

/// One [`ResultRow`] per `(k, estimator)`, k-major.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.k_values.len() * config.estimators.len());
    for &k in &config.k_values {
        let point = config.sweep_point(k)?;
        let errors = count_errors(&point, config.trials)?;
        for (&kind, &errors) in point.estimators.iter().zip(&errors) {
            rows.push(ResultRow::from_counts(
                kind,
                &point,
                config.trials,
                errors,
            ));
        }
    }
    Ok(rows)
}

impl ResultRow {
    pub fn from_counts(kind: EstimatorKind, point: &SweepPoint, trials: u64, errors: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(errors, trials, Z95);
        Self {
            estimator: kind,
            k: point.k,
            n_samples: point.n_samples as u64,
            rho: point.model.rho(),
            snr_db: point.model.snr_db(),
            d_max: point.delay_spec.d_max(),
            trials,
            errors,
            p_err: errors as f64 / trials as f64,
            ci_low,
            ci_high,
            master_seed: point.master_seed,
        }
    }
}

//! The two-sensor observation model.
//!
//! The encoder sees `x[n]`, iid standard normal. The decoder sees
//! `y[n] = rho * x[n - d] + rho_bar * z[n]` with `z[n]` iid standard normal
//! and independent of `x`, where `rho_bar = sqrt(1 - rho^2)` and the delay `d`
//! lies in `{-d_max, ..., d_max}`.
//!
//! Normal variates come from [`rand_distr::StandardNormal`] (ziggurat) driven
//! by the ChaCha8 streams in [`crate::rng`]; the contract is distributional,
//! and bit-identical only for the same seed and generator.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Lowest SNR accepted by [`snr_db_to_model`].
pub const MIN_SNR_DB: f64 = -100.0;

/// Correlation between `x[n]` and `y[n + d]`, with the derived noise weight
/// and SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationModel {
    rho: f64,
    rho_bar: f64,
}

impl CorrelationModel {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::RhoOutOfRange(rho));
        }
        let rho_bar = (1.0 - rho * rho).max(0.0).sqrt();
        Ok(Self { rho, rho_bar })
    }

    /// Model with `rho^2 = rho_sq`.
    pub fn from_rho_squared(rho_sq: f64) -> Result<Self> {
        if !(rho_sq > 0.0 && rho_sq <= 1.0) {
            return Err(Error::RhoOutOfRange(rho_sq.sqrt()));
        }
        Self::new(rho_sq.sqrt())
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rho_squared(&self) -> f64 {
        self.rho * self.rho
    }

    pub fn rho_bar(&self) -> f64 {
        self.rho_bar
    }

    /// Linear SNR `rho^2 / (1 - rho^2)`; infinite when `rho = 1`.
    pub fn snr(&self) -> f64 {
        let rho_sq = self.rho_squared();
        if rho_sq >= 1.0 {
            f64::INFINITY
        } else {
            rho_sq / (1.0 - rho_sq)
        }
    }

    pub fn snr_db(&self) -> f64 {
        10.0 * self.snr().log10()
    }
}

/// Model for a given SNR in dB: `snr = 10^(snr_db / 10)`,
/// `rho^2 = 1 / (1 + 1 / snr)`.
pub fn snr_db_to_model(snr_db: f64) -> Result<CorrelationModel> {
    if !snr_db.is_finite() || snr_db < MIN_SNR_DB {
        return Err(Error::SnrOutOfRange(snr_db));
    }
    let snr = 10f64.powf(snr_db / 10.0);
    CorrelationModel::new((1.0 / (1.0 + 1.0 / snr)).sqrt())
}

/// Equivalent model for two sensors `r1[n] = x[n] + z1[n]`,
/// `r2[n] = x[n - d] + z2[n]` with noise variances `sigma1_sq`, `sigma2_sq`.
///
/// After normalizing each stream to unit power the cross-correlation at the
/// true lag is `1 / sqrt((1 + sigma1_sq) * (1 + sigma2_sq))`.
pub fn model_from_sensor_noise(sigma1_sq: f64, sigma2_sq: f64) -> Result<CorrelationModel> {
    for (name, value) in [("sigma1_sq", sigma1_sq), ("sigma2_sq", sigma2_sq)] {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NoiseVariance { name, value });
        }
    }
    CorrelationModel::new(1.0 / ((1.0 + sigma1_sq) * (1.0 + sigma2_sq)).sqrt())
}

/// Symmetric delay set `{-d_max, ..., d_max}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelaySpec {
    d_max: u64,
}

impl DelaySpec {
    pub fn new(d_max: u64) -> Self {
        Self { d_max }
    }

    pub fn d_max(&self) -> u64 {
        self.d_max
    }

    /// Number of admissible delays, `2 * d_max + 1`.
    pub fn spread(&self) -> u64 {
        2 * self.d_max + 1
    }

    pub fn contains(&self, delay: i64) -> bool {
        delay.unsigned_abs() <= self.d_max
    }

    pub fn delays(&self) -> impl Iterator<Item = i64> {
        let d = self.d_max as i64;
        -d..=d
    }

    pub fn check(&self, delay: i64) -> Result<()> {
        if self.contains(delay) {
            Ok(())
        } else {
            Err(Error::DelayOutOfRange {
                delay,
                d_max: self.d_max,
            })
        }
    }
}

/// Uniform draw from the delay set.
pub fn sample_delay<R: Rng + ?Sized>(delay_spec: DelaySpec, rng: &mut R) -> i64 {
    let d = delay_spec.d_max() as i64;
    rng.random_range(-d..=d)
}

/// Borrowed view of a sequence together with the logical index of its first
/// element.
#[derive(Debug, Clone, Copy)]
pub struct SignalWindow<'a> {
    first: i64,
    values: &'a [f64],
}

impl<'a> SignalWindow<'a> {
    pub fn new(first: i64, values: &'a [f64]) -> Self {
        Self { first, values }
    }

    pub fn first(&self) -> i64 {
        self.first
    }

    /// Logical index of the last element (`first - 1` when empty).
    pub fn last(&self) -> i64 {
        self.first + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }

    pub fn get(&self, index: i64) -> Option<f64> {
        let offset = usize::try_from(index - self.first).ok()?;
        self.values.get(offset).copied()
    }

    /// The sub-slice covering logical indices `lo..=hi`.
    pub fn span(&self, lo: i64, hi: i64) -> Result<&'a [f64]> {
        if lo < self.first || hi > self.last() || hi < lo {
            return Err(Error::WindowTooShort {
                need_lo: lo,
                need_hi: hi,
                have_lo: self.first,
                have_hi: self.last(),
            });
        }
        let start = (lo - self.first) as usize;
        let end = (hi - self.first) as usize + 1;
        Ok(&self.values[start..end])
    }
}

/// One realization of the observation model.
///
/// `x` is stored over `[-2 * d_max, N - 1 + 2 * d_max]` so that `y` is
/// defined over its whole window `[-d_max, N - 1 + d_max]` for every
/// admissible delay. Physical index 0 of each buffer corresponds to the
/// logical index returned by [`TrialData::x_first`] / [`TrialData::y_first`].
#[derive(Debug, Clone, PartialEq)]
pub struct TrialData {
    n_samples: usize,
    d_max: u64,
    true_delay: i64,
    x: Vec<f64>,
    y: Vec<f64>,
}

impl TrialData {
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn true_delay(&self) -> i64 {
        self.true_delay
    }

    pub fn delay_spec(&self) -> DelaySpec {
        DelaySpec::new(self.d_max)
    }

    pub fn x_first(&self) -> i64 {
        -2 * self.d_max as i64
    }

    pub fn y_first(&self) -> i64 {
        -(self.d_max as i64)
    }

    /// The whole stored `x`, including the samples the encoder never sees.
    pub fn x_full(&self) -> SignalWindow<'_> {
        SignalWindow::new(self.x_first(), &self.x)
    }

    /// `x[0..N]`, the encoder's observation.
    pub fn encoder_view(&self) -> &[f64] {
        let start = 2 * self.d_max as usize;
        &self.x[start..start + self.n_samples]
    }

    /// `y[-d_max..=N - 1 + d_max]`, the decoder's observation.
    pub fn decoder_window(&self) -> SignalWindow<'_> {
        SignalWindow::new(self.y_first(), &self.y)
    }
}

/// Draw one realization with delay `true_delay` and `n_samples` encoder
/// samples.
pub fn generate_trial<R: Rng + ?Sized>(
    model: CorrelationModel,
    delay_spec: DelaySpec,
    n_samples: usize,
    true_delay: i64,
    rng: &mut R,
) -> Result<TrialData> {
    if n_samples == 0 {
        return Err(Error::Empty("n_samples"));
    }
    delay_spec.check(true_delay)?;
    let d_max = delay_spec.d_max();
    let pad = d_max as usize;

    let x: Vec<f64> = (0..n_samples + 4 * pad)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();

    // y[n] uses x[n - d]; in physical terms y[i] pairs with x[i + d_max - d].
    let shift = (d_max as i64 - true_delay) as usize;
    let source = &x[shift..shift + n_samples + 2 * pad];
    let (rho, rho_bar) = (model.rho(), model.rho_bar());
    let y = if rho_bar == 0.0 {
        source.iter().map(|&v| rho * v).collect()
    } else {
        source
            .iter()
            .map(|&v| rho * v + rho_bar * rng.sample::<f64, _>(StandardNormal))
            .collect()
    };

    Ok(TrialData {
        n_samples,
        d_max,
        true_delay,
        x,
        y,
    })
}

/// Raw observations of two sensors sharing a common signal:
/// `r1[n] = x[n] + z1[n]` and `r2[n] = x[n - delay] + z2[n]`, both for
/// `n in 0..len`.
#[derive(Debug, Clone)]
pub struct SensorPair {
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
    pub delay: i64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
}

impl SensorPair {
    pub fn generate<R: Rng + ?Sized>(
        sigma1_sq: f64,
        sigma2_sq: f64,
        len: usize,
        delay: i64,
        rng: &mut R,
    ) -> Result<Self> {
        model_from_sensor_noise(sigma1_sq, sigma2_sq)?;
        if len == 0 {
            return Err(Error::Empty("sensor record"));
        }
        // x over [lo, lo + len + |delay|), covering both n and n - delay.
        let lo = (-delay).min(0);
        let total = len + delay.unsigned_abs() as usize;
        let x: Vec<f64> = (0..total)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let x_at = |n: i64| x[(n - lo) as usize];
        let (s1, s2) = (sigma1_sq.sqrt(), sigma2_sq.sqrt());
        let r1 = (0..len as i64)
            .map(|n| x_at(n) + s1 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let r2 = (0..len as i64)
            .map(|n| x_at(n - delay) + s2 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        Ok(Self {
            r1,
            r2,
            delay,
            sigma1_sq,
            sigma2_sq,
        })
    }

    /// Both streams scaled to unit power.
    pub fn normalized(&self) -> (Vec<f64>, Vec<f64>) {
        let a = 1.0 / (1.0 + self.sigma1_sq).sqrt();
        let b = 1.0 / (1.0 + self.sigma2_sq).sqrt();
        (
            self.r1.iter().map(|v| v * a).collect(),
            self.r2.iter().map(|v| v * b).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::stats::{mean_and_variance, pearson};

    #[test]
    fn snr_conversions() {
        let m = snr_db_to_model(0.0).unwrap();
        assert!((m.snr() - 1.0).abs() < 1e-12);
        assert!((m.rho_squared() - 0.5).abs() < 1e-12);
        assert!((m.rho() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let m = snr_db_to_model(20.0).unwrap();
        assert!((m.snr() - 100.0).abs() < 1e-9);
        assert!((m.rho_squared() - 100.0 / 101.0).abs() < 1e-12);
    }

    #[test]
    fn snr_rejects_degenerate_inputs() {
        assert!(snr_db_to_model(-100.5).is_err());
        assert!(snr_db_to_model(f64::NEG_INFINITY).is_err());
        assert!(snr_db_to_model(f64::NAN).is_err());
        assert!(snr_db_to_model(-100.0).is_ok());
        assert!(CorrelationModel::new(0.0).is_err());
        assert!(CorrelationModel::new(1.0 + 1e-12).is_err());
    }

    #[test]
    fn rho_one_has_infinite_snr() {
        let m = CorrelationModel::new(1.0).unwrap();
        assert_eq!(m.rho_bar(), 0.0);
        assert!(m.snr().is_infinite());
    }

    #[test]
    fn sensor_noise_mapping() {
        assert_eq!(model_from_sensor_noise(0.0, 0.0).unwrap().rho(), 1.0);
        let m = model_from_sensor_noise(1.0, 0.0).unwrap();
        assert!((m.rho() - 0.5f64.sqrt()).abs() < 1e-12);
        let m = model_from_sensor_noise(1.0, 3.0).unwrap();
        assert!((m.rho() - 1.0 / 8f64.sqrt()).abs() < 1e-12);
        assert!(model_from_sensor_noise(-1.0, 0.0).is_err());
    }

    #[test]
    fn sensor_noise_mapping_matches_monte_carlo() {
        let n = 1_000_000;
        for (s1, s2, d) in [(1.0, 0.0, 2i64), (1.0, 3.0, -4)] {
            let rho = model_from_sensor_noise(s1, s2).unwrap().rho();
            let pair = SensorPair::generate(s1, s2, n, d, &mut rng::stream(11, 0, 0)).unwrap();
            let (a, b) = pair.normalized();
            let (a, b) = lagged(&a, &b, d);
            let r = pearson(a, b);
            let se = (1.0 - rho * rho) / (a.len() as f64).sqrt();
            assert!((r - rho).abs() < 3.0 * se, "r={r} rho={rho} se={se}");
        }
    }

    // Pairs a[n] with b[n + lag].
    fn lagged<'a>(a: &'a [f64], b: &'a [f64], lag: i64) -> (&'a [f64], &'a [f64]) {
        let n = a.len();
        if lag >= 0 {
            let l = lag as usize;
            (&a[..n - l], &b[l..])
        } else {
            let l = (-lag) as usize;
            (&a[l..], &b[..n - l])
        }
    }

    #[test]
    fn delay_spec_set() {
        let spec = DelaySpec::new(150);
        assert_eq!(spec.spread(), 301);
        assert_eq!(spec.delays().count(), 301);
        assert_eq!(spec.delays().next(), Some(-150));
        assert_eq!(spec.delays().last(), Some(150));
        assert!(!spec.contains(151));
        assert_eq!(DelaySpec::new(0).delays().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn sample_delay_singleton_and_support() {
        let mut rng = rng::stream(1, 0, 0);
        for _ in 0..100 {
            assert_eq!(sample_delay(DelaySpec::new(0), &mut rng), 0);
        }
        let spec = DelaySpec::new(150);
        let mut seen = [false; 301];
        for _ in 0..100_000 {
            let d = sample_delay(spec, &mut rng);
            assert!(spec.contains(d));
            seen[(d + 150) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn sample_delay_is_uniform() {
        // Chi-squared at significance 0.001: 2 dof -> 13.816, 300 dof -> 381.4.
        let mut rng = rng::stream(2, 0, 0);
        for (d_max, critical) in [(1u64, 13.816), (150, 381.4)] {
            let spec = DelaySpec::new(d_max);
            let draws = 100_000;
            let mut counts = vec![0u64; spec.spread() as usize];
            for _ in 0..draws {
                counts[(sample_delay(spec, &mut rng) + d_max as i64) as usize] += 1;
            }
            let expected = draws as f64 / spec.spread() as f64;
            let chi2: f64 = counts
                .iter()
                .map(|&c| (c as f64 - expected).powi(2) / expected)
                .sum();
            assert!(chi2 < critical, "d_max={d_max} chi2={chi2}");
            if d_max == 1 {
                let p = 1.0 / 3.0;
                let sigma = (p * (1.0 - p) / draws as f64).sqrt();
                for c in counts {
                    assert!((c as f64 / draws as f64 - p).abs() < 3.0 * sigma);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_trials() {
        let m = CorrelationModel::new(0.5).unwrap();
        let mut rng = rng::stream(3, 0, 0);
        assert!(generate_trial(m, DelaySpec::new(2), 8, 3, &mut rng).is_err());
        assert!(generate_trial(m, DelaySpec::new(2), 0, 0, &mut rng).is_err());
    }

    #[test]
    fn rho_one_copies_delayed_signal() {
        let m = CorrelationModel::new(1.0).unwrap();
        let spec = DelaySpec::new(5);
        let mut rng = rng::stream(4, 0, 0);
        for d in spec.delays() {
            let t = generate_trial(m, spec, 32, d, &mut rng).unwrap();
            let x = t.x_full();
            let y = t.decoder_window();
            assert_eq!(y.first(), -5);
            assert_eq!(y.last(), 31 + 5);
            for n in y.first()..=y.last() {
                assert_eq!(y.get(n).unwrap(), x.get(n - d).unwrap());
            }
        }
    }

    #[test]
    fn index_ranges() {
        let m = CorrelationModel::new(0.3).unwrap();
        let t = generate_trial(m, DelaySpec::new(3), 10, -2, &mut rng::stream(5, 0, 0)).unwrap();
        assert_eq!(t.x_full().first(), -6);
        assert_eq!(t.x_full().last(), 9 + 6);
        assert_eq!(t.encoder_view().len(), 10);
        assert_eq!(t.encoder_view()[0], t.x_full().get(0).unwrap());
        assert_eq!(t.encoder_view()[9], t.x_full().get(9).unwrap());
        assert_eq!(t.decoder_window().values().len(), 16);
    }

    #[test]
    fn marginals_and_correlation() {
        let n = 1_000_000;
        let m = CorrelationModel::new(0.5).unwrap();
        let t = generate_trial(m, DelaySpec::new(0), n, 0, &mut rng::stream(6, 0, 0)).unwrap();
        let y = t.decoder_window().values();
        let r = pearson(t.encoder_view(), y);
        assert!((r - 0.5).abs() < 3.0 / (n as f64).sqrt(), "r={r}");
        let (mean, var) = mean_and_variance(y);
        assert!(mean.abs() < 3.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 0.01);
    }

    #[test]
    fn signals_are_white() {
        let n = 1_000_000;
        let m = CorrelationModel::new(0.8).unwrap();
        let t = generate_trial(m, DelaySpec::new(4), n, 3, &mut rng::stream(7, 0, 0)).unwrap();
        let tol = 4.0 / (n as f64).sqrt();
        for seq in [t.encoder_view(), t.decoder_window().values()] {
            for lag in 1..=10 {
                let r = pearson(&seq[..seq.len() - lag], &seq[lag..]);
                assert!(r.abs() < tol, "lag {lag}: {r}");
            }
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let m = CorrelationModel::new(0.7).unwrap();
        let spec = DelaySpec::new(10);
        let a = generate_trial(m, spec, 256, -7, &mut rng::stream(9, 1, 2)).unwrap();
        let b = generate_trial(m, spec, 256, -7, &mut rng::stream(9, 1, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn window_span_checks_bounds() {
        let v = [1.0, 2.0, 3.0, 4.0];
        let w = SignalWindow::new(-1, &v);
        assert_eq!(w.span(0, 1).unwrap(), &[2.0, 3.0]);
        assert!(w.span(-2, 0).is_err());
        assert!(w.span(0, 3).is_err());
        assert_eq!(w.get(-1), Some(1.0));
        assert_eq!(w.get(-2), None);
    }
}

//! Correlation recovered from the value at the maximum: mean and spread
//! against the asymptotic and exact finite-N variance.
//!
//! `cargo run --release --example correlation_estimate -- [rho] [log2 N] [trials]`

use rayon::prelude::*;

use extremum_tde::model::{generate_trial, sample_delay, CorrelationModel, DelaySpec};
use extremum_tde::stats::mean_and_variance;
use extremum_tde::{bounds, codec, estimators, rng};

fn main() -> extremum_tde::Result<()> {
    let mut args = std::env::args().skip(1);
    let rho: f64 = args.next().map_or(0.6, |a| a.parse().expect("rho"));
    let k: u32 = args.next().map_or(12, |a| a.parse().expect("log2 N"));
    let trials: u64 = args.next().map_or(20_000, |a| a.parse().expect("trials"));

    let model = CorrelationModel::new(rho)?;
    let spec = DelaySpec::new(4);
    let n = 1usize << k;
    let m = bounds::expected_max(n as u64)?;
    let est = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(5, k as u64, i);
            let d = sample_delay(spec, &mut rng);
            let t = generate_trial(model, spec, n, d, &mut rng)?;
            let j = codec::decode_index(&codec::encode_max_index(t.encoder_view(), k)?);
            estimators::rho_hat_mie(t.decoder_window(), j, d, m)
        })
        .collect::<extremum_tde::Result<Vec<f64>>>()?;

    let (mean, var) = mean_and_variance(&est);
    println!("N = 2^{k}, E[max] = {m:.5}, {trials} trials");
    println!("mean  {mean:.5} (rho {rho})");
    println!("var   {var:.6}");
    println!("exact {:.6}", bounds::mie_variance_exact(n as u64, rho)?);
    println!("asym  {:.6}  (1 - rho^2) / (2 ln N)", bounds::mie_variance_asymptotic(n as u64, rho)?);
    Ok(())
}

//! Run every estimator on the same trial and print the correlation profiles.
//!
//! `cargo run --example compare_estimators -- [k] [snr dB] [d_max]`

use extremum_tde::bounds;
use extremum_tde::codec;
use extremum_tde::estimators::{self, EstimatorKind};
use extremum_tde::harness::ExperimentConfig;
use extremum_tde::model::{generate_trial, sample_delay, snr_db_to_model, DelaySpec};
use extremum_tde::{harness, rng};

fn main() -> extremum_tde::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(10, |a| a.parse().expect("k"));
    let snr_db: f64 = args.next().map_or(10.0, |a| a.parse().expect("snr"));
    let d_max: u64 = args.next().map_or(6, |a| a.parse().expect("d_max"));

    let model = snr_db_to_model(snr_db)?;
    let spec = DelaySpec::new(d_max);
    let n = 1usize << k;
    let mut rng = rng::stream(11, k as u64, 0);
    let d = sample_delay(spec, &mut rng);
    let t = generate_trial(model, spec, n, d, &mut rng)?;
    let x = t.encoder_view();
    let y = t.decoder_window();

    let msg = codec::encode_max_index(x, k)?;
    let j = codec::decode_index(&msg);
    let mie = estimators::mie_profile(y, j, d_max, bounds::expected_max(n as u64)?)?;
    let mle = estimators::cross_correlate(x, y, d_max)?;
    let signs = estimators::sign_quantize(&x[..k as usize]);
    let onebit = estimators::cross_correlate(&signs, y, d_max)?;

    println!("k {k}, snr {snr_db} dB (rho {:.4}), true delay {d}", model.rho());
    println!("{:>5} {:>9} {:>9} {:>9}", "lag", "mie", "mle", "onebit");
    for lag in mie.lags() {
        let mark = if lag == d { " <" } else { "" };
        println!(
            "{lag:>5} {:>9.4} {:>9.4} {:>9.4}{mark}",
            mie.value_at(lag).unwrap(),
            mle.value_at(lag).unwrap(),
            onebit.value_at(lag).unwrap()
        );
    }

    // The harness runs the same thing, including the RD benchmark, per trial.
    let point = ExperimentConfig::new(model, d_max, vec![k])
        .with_estimators(&EstimatorKind::ALL)
        .with_seed(11)
        .sweep_point(k)?;
    let outcome = harness::run_trial(&point, 0)?;
    println!("harness trial 0: true delay {}", outcome.true_delay);
    for (kind, estimate) in &outcome.estimates {
        let bits = point
            .bits_used(*kind)
            .map_or("unlimited".to_string(), |b| format!("{b}"));
        println!("{kind:>6}: estimate {estimate:>3}, bits {bits}");
    }
    Ok(())
}

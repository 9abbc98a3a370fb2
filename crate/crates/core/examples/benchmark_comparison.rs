//! Error rate of every estimator against message size at a fixed SNR, with
//! the bounds alongside. The CSV is the input of the plotting script.
//!
//! `cargo run --release --example benchmark_comparison -- [snr dB] [trials] [out.csv]`

use std::path::PathBuf;

use extremum_tde::bounds;
use extremum_tde::estimators::EstimatorKind;
use extremum_tde::harness::{self, ExperimentConfig};
use extremum_tde::model::snr_db_to_model;

fn main() -> extremum_tde::Result<()> {
    let mut args = std::env::args().skip(1);
    let snr_db: f64 = args.next().map_or(20.0, |a| a.parse().expect("snr"));
    let trials: u64 = args.next().map_or(2_000, |a| a.parse().expect("trials"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/benchmark.csv".into()));

    let model = snr_db_to_model(snr_db)?;
    let d_max = 150;
    let cfg = ExperimentConfig::new(model, d_max, (4..=14).step_by(2).collect())
        .with_estimators(&EstimatorKind::ALL)
        .with_trials(trials)
        .with_seed(3);
    let rows = harness::run_experiment(&cfg)?;

    println!("snr {snr_db} dB (rho {:.4}), d_max {d_max}, {trials} trials", model.rho());
    print!("{:>4}", "k");
    for kind in EstimatorKind::ALL {
        print!(" {:>8}", kind.tag());
    }
    println!(" {:>10} {:>10}", "lower", "upper");
    for &k in &cfg.k_values {
        print!("{k:>4}");
        for kind in EstimatorKind::ALL {
            let r = rows.iter().find(|r| r.k == k && r.estimator == kind).unwrap();
            print!(" {:>8.4}", r.p_err);
        }
        println!(
            " {:>10.3e} {:>10.3e}",
            bounds::lower_bound(k, model.rho())?,
            bounds::upper_bound(k, model.rho(), d_max)?
        );
    }
    harness::persist_results(&rows, &out)?;
    println!("wrote {}", out.display());
    Ok(())
}

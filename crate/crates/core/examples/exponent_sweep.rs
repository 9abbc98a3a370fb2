//! Monte Carlo error rate of the extremum estimator over k, with a
//! least-squares fit of the decay exponent. Writes the results and the fit
//! as CSV.
//!
//! `cargo run --release --example exponent_sweep -- [out_dir] [trials]`

use std::fs::File;
use std::path::PathBuf;

use extremum_tde::harness::{self, ExperimentConfig};
use extremum_tde::model::CorrelationModel;

fn main() -> extremum_tde::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/sweep".into()));
    let trials: u64 = args.next().map_or(5_000, |a| a.parse().expect("trials"));
    std::fs::create_dir_all(&out)?;

    let cfg = ExperimentConfig::new(CorrelationModel::from_rho_squared(0.5)?, 10, vec![6, 8, 10, 12, 14])
        .with_trials(trials)
        .with_seed(1);
    let rows = harness::run_experiment(&cfg)?;
    for r in &rows {
        println!(
            "k={:<3} p_err {:.4} [{:.4}, {:.4}]  log2 {:.3}",
            r.k,
            r.p_err,
            r.ci_low,
            r.ci_high,
            r.p_err.log2()
        );
    }
    let fit = harness::fit_exponent(&rows)?;
    println!(
        "slope {:.4} bits/bit over k {}..{}, theoretical {:.4}, c_hat {:.3}",
        fit.slope_bits, fit.k_range.0, fit.k_range.1, -fit.theoretical_exponent, fit.c_hat
    );

    harness::persist_results(&rows, &out.join("results.csv"))?;
    harness::write_fit(&fit, File::create(out.join("fit.csv"))?)?;
    println!("wrote {}", out.display());
    Ok(())
}

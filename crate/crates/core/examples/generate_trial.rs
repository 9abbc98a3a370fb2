//! Draw one correlated sensor pair and show the stored windows.
//!
//! `cargo run --example generate_trial -- [rho] [d_max] [log2 N]`

use extremum_tde::model::{
    generate_trial, model_from_sensor_noise, sample_delay, CorrelationModel, DelaySpec,
    SensorPair,
};
use extremum_tde::rng;
use extremum_tde::stats::pearson;

fn main() -> extremum_tde::Result<()> {
    let mut args = std::env::args().skip(1);
    let rho: f64 = args.next().map_or(0.8, |a| a.parse().expect("rho"));
    let d_max: u64 = args.next().map_or(4, |a| a.parse().expect("d_max"));
    let log_n: u32 = args.next().map_or(6, |a| a.parse().expect("log2 N"));

    let model = CorrelationModel::new(rho)?;
    let spec = DelaySpec::new(d_max);
    let mut rng = rng::stream(2024, 0, 0);
    let d = sample_delay(spec, &mut rng);
    let trial = generate_trial(model, spec, 1 << log_n, d, &mut rng)?;

    println!(
        "rho {:.3} (snr {:.2} dB), d_max {d_max}, N {}, true delay {d}",
        model.rho(),
        model.snr_db(),
        trial.n_samples()
    );
    let x = trial.x_full();
    let y = trial.decoder_window();
    println!("x stored on [{}, {}], y stored on [{}, {}]", x.first(), x.last(), y.first(), y.last());
    println!("{:>5} {:>9} {:>9}", "n", "x[n-d]", "y[n]");
    for n in 0..8i64 {
        println!("{n:>5} {:>9.4} {:>9.4}", x.get(n - d).unwrap(), y.get(n).unwrap());
    }

    // Two noisy sensors observing one source reduce to the same model.
    let (s1, s2) = (1.0, 3.0);
    let equivalent = model_from_sensor_noise(s1, s2)?;
    let pair = SensorPair::generate(s1, s2, 200_000, 5, &mut rng)?;
    let (r1, r2) = pair.normalized();
    let m = r1.len() - 5;
    println!(
        "sensor noise ({s1}, {s2}): equivalent rho {:.4}, sample correlation at lag 5 {:.4}",
        equivalent.rho(),
        pearson(&r1[..m], &r2[5..])
    );
    Ok(())
}

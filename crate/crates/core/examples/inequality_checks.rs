//! Deterministic inequality checks behind the error bounds.
//!
//! `cargo run --example inequality_checks`

use extremum_tde::bounds::{self, checks};
use extremum_tde::rng;

fn main() -> extremum_tde::Result<()> {
    for outcome in checks::run_all()? {
        println!("{outcome}");
    }

    println!("\nln(2^k Q-scaled tail) along k = m^2:");
    for k in checks::DECAY_KS.iter().chain(&checks::DECAY_KS_LARGE) {
        println!("  k={k:<4} {:>12.4}", checks::ln_scaled_lemma1(*k)?);
    }

    let e = bounds::truncated_mixture_monte_carlo(1.5, 0.3, 0.7, 200_000, &mut rng::stream(6, 0, 0))?;
    println!(
        "\ntruncated mixture: P(lhs) {:.4} +- {:.4} vs Q(a) - Q(V) = {:.4}",
        e.lhs, e.lhs_std_err, e.rhs
    );
    Ok(())
}

//! Closed-form error bounds over a range of message sizes.
//!
//! `cargo run --example bounds_table -- [rho^2] [d_max]`

use extremum_tde::bounds::{self, BoundReport};

fn main() -> extremum_tde::Result<()> {
    let mut args = std::env::args().skip(1);
    let rho_sq: f64 = args.next().map_or(0.5, |a| a.parse().expect("rho^2"));
    let d_max: u64 = args.next().map_or(10, |a| a.parse().expect("d_max"));
    let rho = rho_sq.sqrt();

    println!(
        "rho^2 {rho_sq}, d_max {d_max}: exponent {:.4} bits/bit, sandwich valid from k = {}",
        bounds::error_exponent(rho)?,
        bounds::sandwich_min_k(rho, d_max)?
    );
    println!("{:>4} {:>11} {:>11} {:>8}", "k", "lower", "upper", "tau*");
    for k in (4..=32).step_by(4) {
        let r = BoundReport::evaluate(k, rho, d_max)?;
        println!("{k:>4} {:>11.4e} {:>11.4e} {:>8.4}", r.lower, r.upper, r.tau_star);
    }

    println!("\nQ(x) brackets:");
    for x in [0.5, 1.0, 2.0, 4.0] {
        println!(
            "  x={x:<4} {:.4e} <= {:.4e} <= {:.4e}",
            bounds::q_lower_gordon(x)?,
            bounds::q_function(x),
            bounds::q_upper_chernoff(x)?
        );
    }
    Ok(())
}

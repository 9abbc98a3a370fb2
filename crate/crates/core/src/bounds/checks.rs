//! Deterministic inequality checks backing the error-probability analysis.
//!
//! Each check evaluates closed-form quantities on a fixed grid; comparisons
//! allow only a relative `1e-12` rounding slack.

use std::fmt;
use std::f64::consts::LN_2;

use super::{
    error_exponent, lemma1_bound, lower_bound, max_lower_tail_exact, q_function, q_lower_gordon,
    q_upper_chernoff, tau_star, upper_bound,
};
use crate::Result;

pub const RELATIVE_SLACK: f64 = 1e-12;

pub const LEMMA1_TAUS: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 3.0, 5.0];
pub const Q_GRID: [f64; 7] = [0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0];
pub const DECAY_KS: [u32; 4] = [16, 25, 36, 49];
pub const DECAY_KS_LARGE: [u32; 4] = [144, 169, 196, 225];
pub const SANDWICH_D_MAX: [u64; 4] = [1, 2, 10, 150];

/// Correlations for the sandwich grid: SNR from about -4.6 dB up to noiseless.
pub fn sandwich_rhos() -> [f64; 7] {
    [
        0.3,
        0.5,
        0.5f64.sqrt(),
        0.8,
        0.9,
        (100.0f64 / 101.0).sqrt(),
        1.0,
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

fn le(a: f64, b: f64) -> bool {
    a <= b + RELATIVE_SLACK * b.abs()
}

/// `Phi(tau)^N <= exp(-N * Gordon(tau))` for `N = 2^1..2^20` and each tau.
pub fn lemma1_dominates_exact_tail() -> Result<CheckOutcome> {
    let mut violations = Vec::new();
    let mut points = 0;
    for log_n in 1..=20u32 {
        let n = 1u64 << log_n;
        for tau in LEMMA1_TAUS {
            points += 1;
            let exact = max_lower_tail_exact(n, tau)?;
            let bound = lemma1_bound(n, tau)?;
            if !le(exact, bound) {
                violations.push(format!("N=2^{log_n} tau={tau}: {exact:e} > {bound:e}"));
            }
        }
    }
    Ok(outcome("lemma1_dominates_exact_tail", points, violations))
}

/// Gordon lower bound <= Q <= Chernoff upper bound.
pub fn q_bound_ordering() -> Result<CheckOutcome> {
    let mut violations = Vec::new();
    for x in Q_GRID {
        let (lo, q, hi) = (q_lower_gordon(x)?, q_function(x), q_upper_chernoff(x)?);
        if !(le(lo, q) && le(q, hi)) {
            violations.push(format!("x={x}: {lo:e} <= {q:e} <= {hi:e} fails"));
        }
    }
    Ok(outcome("q_bound_ordering", Q_GRID.len(), violations))
}

/// `lower_bound(k, rho) <= upper_bound(k, rho, d_max)` over `k = 1..=64` and
/// the correlation and delay-spread grids.
pub fn bound_sandwich() -> Result<CheckOutcome> {
    let mut violations = Vec::new();
    let mut points = 0;
    for rho in sandwich_rhos() {
        for d_max in SANDWICH_D_MAX {
            for k in 1..=64 {
                points += 1;
                let (lo, hi) = (lower_bound(k, rho)?, upper_bound(k, rho, d_max)?);
                if !le(lo, hi) {
                    violations.push(format!("k={k} rho={rho} d_max={d_max}: {lo:e} > {hi:e}"));
                }
            }
        }
    }
    Ok(outcome("bound_sandwich", points, violations))
}

/// `ln(lemma1_bound(2^k, tau_star(k)) * 2^k)`, evaluated in the log domain so
/// `k` may exceed 63.
pub fn ln_scaled_lemma1(k: u32) -> Result<f64> {
    let tau = tau_star(k)?;
    let n = 2f64.powi(k as i32);
    Ok(-n * q_lower_gordon(tau)? + k as f64 * LN_2)
}

fn strictly_decreasing(name: &'static str, ks: &[u32]) -> Result<CheckOutcome> {
    let values = ks
        .iter()
        .map(|&k| ln_scaled_lemma1(k))
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    for i in 1..ks.len() {
        if values[i] >= values[i - 1] {
            violations.push(format!(
                "k={} -> k={}: ln value {:.4} -> {:.4}",
                ks[i - 1],
                ks[i],
                values[i - 1],
                values[i]
            ));
        }
    }
    Ok(outcome(name, ks.len() - 1, violations))
}

/// `lemma1_bound(2^k, tau_star(k)) * 2^k` strictly decreasing over k = 16, 25, 36, 49.
pub fn superexponential_decay() -> Result<CheckOutcome> {
    strictly_decreasing("superexponential_decay", &DECAY_KS)
}

/// The same sequence over k = 144, 169, 196, 225.
pub fn superexponential_decay_large_k() -> Result<CheckOutcome> {
    strictly_decreasing("superexponential_decay_large_k", &DECAY_KS_LARGE)
}

/// Both bounds' `-(1/k) log2` within 0.01 of the exponent at `k = 10^4`.
pub fn exponent_agreement() -> Result<CheckOutcome> {
    let k = 10_000u32;
    let mut violations = Vec::new();
    for rho in sandwich_rhos() {
        let e = error_exponent(rho)?;
        let rho_sq = rho * rho;
        let kf = k as f64;
        // log2 of each bound, evaluated symbolically to avoid underflow.
        let log2_upper = (2.0 * 10.0f64).log2() - kf * e;
        let log2_lower = 0.5
            * ((2.0 - rho_sq) / (4.0 * std::f64::consts::PI * rho_sq * LN_2 * kf)).log2()
            - kf * e;
        for (which, v) in [("upper", log2_upper), ("lower", log2_lower)] {
            let rate = -v / kf;
            if (rate - e).abs() >= 0.01 {
                violations.push(format!("rho={rho} {which}: rate {rate} vs exponent {e}"));
            }
        }
    }
    Ok(outcome("exponent_agreement", sandwich_rhos().len() * 2, violations))
}

fn outcome(name: &'static str, points: usize, violations: Vec<String>) -> CheckOutcome {
    let passed = violations.is_empty();
    let detail = if passed {
        format!("{points} points")
    } else {
        format!(
            "{} of {points} points violated; first: {}",
            violations.len(),
            violations[0]
        )
    };
    CheckOutcome {
        name,
        passed,
        detail,
    }
}

/// Every check, in a fixed order.
pub fn run_all() -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        lemma1_dominates_exact_tail()?,
        q_bound_ordering()?,
        bound_sandwich()?,
        superexponential_decay()?,
        superexponential_decay_large_k()?,
        exponent_agreement()?,
    ])
}

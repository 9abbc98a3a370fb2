//! Closed-form error-probability analysis of the maximum-index estimator.
//!
//! Log conventions: every formula is evaluated with natural logarithms. The
//! error exponent is a base-2 quantity (bits of error decay per message bit):
//! `-(1/k) log2(eps) -> rho^2 / (2 - rho^2)`. The bounds themselves are
//! probabilities written as `exp(-k ln2 * exponent)`, i.e.
//! `2^(-k * exponent)`.
//!
//! Bounds are returned raw and may exceed 1 for small `k`.

use std::f64::consts::{LN_2, PI, SQRT_2};

use crate::quadrature;
use crate::{Error, Result};

pub mod checks;

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho <= 1.0 {
        Ok(())
    } else {
        Err(Error::RhoOutOfRange(rho))
    }
}

fn check_k(k: u32) -> Result<()> {
    if k >= 1 {
        Ok(())
    } else {
        Err(Error::TooSmall {
            what: "message size k",
            min: 1.0,
            got: k as f64,
        })
    }
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal upper tail `Q(x) = P(Z > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Standard normal CDF `Phi(x) = 1 - Q(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    q_function(-x)
}

/// `ln Phi(x)`, accurate in both tails.
pub fn ln_normal_cdf(x: f64) -> f64 {
    if x < 0.0 {
        q_function(-x).ln()
    } else {
        (-q_function(x)).ln_1p()
    }
}

fn check_positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::NotPositive { what, got: x })
    }
}

/// Gordon's lower bound `x / (1 + x^2) * phi(x) <= Q(x)`, for `x > 0`.
pub fn q_lower_gordon(x: f64) -> Result<f64> {
    check_positive("Gordon bound argument", x)?;
    Ok(x / (1.0 + x * x) * normal_pdf(x))
}

/// Chernoff upper bound `Q(x) <= exp(-x^2 / 2)`, for `x > 0`.
pub fn q_upper_chernoff(x: f64) -> Result<f64> {
    check_positive("Chernoff bound argument", x)?;
    Ok((-0.5 * x * x).exp())
}

/// Base-2 error exponent `rho^2 / (2 - rho^2)`.
pub fn error_exponent(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let rho_sq = rho * rho;
    Ok(rho_sq / (2.0 - rho_sq))
}

/// Upper bound `2 d_max * exp(-k ln2 * rho^2 / (2 - rho^2))` on the MIE error
/// probability (up to a `1 + o(1)` factor).
pub fn upper_bound(k: u32, rho: f64, d_max: u64) -> Result<f64> {
    let exponent = error_exponent(rho)?;
    Ok(2.0 * d_max as f64 * (-(k as f64) * LN_2 * exponent).exp())
}

/// Lower bound `sqrt((2 - rho^2) / (4 pi rho^2 ln2 k)) * exp(-k ln2 * rho^2 / (2 - rho^2))`
/// (up to a `1 + o(1)` factor), with `N = 2^k`.
pub fn lower_bound(k: u32, rho: f64) -> Result<f64> {
    check_k(k)?;
    let exponent = error_exponent(rho)?;
    let rho_sq = rho * rho;
    let k = k as f64;
    let prefactor = ((2.0 - rho_sq) / (4.0 * PI * rho_sq * LN_2 * k)).sqrt();
    Ok(prefactor * (-k * LN_2 * exponent).exp())
}

/// Smallest `k >= 1` with `lower_bound(k, rho) <= upper_bound(k, rho, d_max)`.
///
/// The two bounds share the exponential factor, so this reduces to
/// `(2 - rho^2) / (4 pi rho^2 ln2 k) <= 4 d_max^2`.
pub fn sandwich_min_k(rho: f64, d_max: u64) -> Result<u32> {
    check_rho(rho)?;
    check_positive("d_max", d_max as f64)?;
    let rho_sq = rho * rho;
    let d = d_max as f64;
    let k = (2.0 - rho_sq) / (16.0 * PI * rho_sq * LN_2 * d * d);
    Ok(k.ceil().max(1.0) as u32)
}

/// Threshold `sqrt(2 ln2 k (1 - 1/sqrt(k)))` below which the maximum of `2^k`
/// standard normals falls only with super-exponentially small probability.
pub fn tau_star(k: u32) -> Result<f64> {
    check_k(k)?;
    let k = k as f64;
    Ok((2.0 * LN_2 * k * (1.0 - 1.0 / k.sqrt())).max(0.0).sqrt())
}

/// `P(max of N iid standard normals < tau) = Phi(tau)^N`.
pub fn max_lower_tail_exact(n: u64, tau: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "N",
            min: 1.0,
            got: 0.0,
        });
    }
    Ok((n as f64 * ln_normal_cdf(tau)).exp())
}

/// Upper bound `exp(-N * tau / (1 + tau^2) * phi(tau))` on
/// [`max_lower_tail_exact`], valid for `tau > 0`.
pub fn lemma1_bound(n: u64, tau: f64) -> Result<f64> {
    let gordon = q_lower_gordon(tau).map_err(|_| Error::NotPositive {
        what: "tau",
        got: tau,
    })?;
    Ok((-(n as f64) * gordon).exp())
}

/// `E[max of N iid standard normals] = N * int x phi(x) Phi(x)^(N-1) dx`,
/// by adaptive quadrature over (-10, 10) to ~1e-12.
pub fn expected_max(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "N",
            min: 2.0,
            got: n as f64,
        });
    }
    Ok(max_moment(n, 1))
}

/// Variance of the maximum of `n` iid standard normals, by quadrature.
pub fn max_variance(n: u64) -> Result<f64> {
    let mean = expected_max(n)?;
    Ok(max_moment(n, 2) - mean * mean)
}

fn max_moment(n: u64, power: i32) -> f64 {
    let nf = n as f64;
    let density = move |x: f64| {
        let log_cdf = (nf - 1.0) * ln_normal_cdf(x);
        nf * normal_pdf(x) * log_cdf.exp()
    };
    quadrature::integrate(|x| x.powi(power) * density(x), -10.0, 10.0, 80, 1e-12).value
}

/// Leading-order variance `(1 - rho^2) / (2 ln N)` of `rho_hat_mie` at the
/// true lag.
pub fn mie_variance_asymptotic(n: u64, rho: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooSmall {
            what: "N",
            min: 2.0,
            got: n as f64,
        });
    }
    check_rho(rho)?;
    Ok((1.0 - rho * rho) / (2.0 * (n as f64).ln()))
}

/// Exact finite-N variance of `y[J] / E[x[J]]` at the true lag:
/// `(rho^2 Var(x[J]) + 1 - rho^2) / E[x[J]]^2`.
pub fn mie_variance_exact(n: u64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let mean = expected_max(n)?;
    let var = max_variance(n)?;
    let rho_sq = rho * rho;
    Ok((rho_sq * var + 1.0 - rho_sq) / (mean * mean))
}

/// Monte Carlo estimate of both sides of the truncated-mixture inequality
/// `P(a < rho * min(v, V) + rho_bar * z) >= P(a < v) - Q(V)` for independent
/// standard normals `v`, `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedMixtureEstimate {
    /// Empirical left-hand side.
    pub lhs: f64,
    pub lhs_std_err: f64,
    /// Exact right-hand side `Q(a) - Q(V)`.
    pub rhs: f64,
}

pub fn truncated_mixture_monte_carlo<R: rand::Rng + ?Sized>(
    v_cap: f64,
    a: f64,
    rho: f64,
    draws: u64,
    rng: &mut R,
) -> Result<TruncatedMixtureEstimate> {
    use rand_distr::StandardNormal;
    check_rho(rho)?;
    if draws == 0 {
        return Err(Error::Empty("draws"));
    }
    let rho_bar = (1.0 - rho * rho).sqrt();
    let mut hits = 0u64;
    for _ in 0..draws {
        let v: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if a < rho * v.min(v_cap) + rho_bar * z {
            hits += 1;
        }
    }
    let p = hits as f64 / draws as f64;
    Ok(TruncatedMixtureEstimate {
        lhs: p,
        lhs_std_err: (p * (1.0 - p) / draws as f64).sqrt(),
        rhs: q_function(a) - q_function(v_cap),
    })
}

/// All closed-form quantities for one `(k, rho, d_max)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub k: u32,
    pub rho: f64,
    pub d_max: u64,
    pub upper: f64,
    pub lower: f64,
    /// Base-2 exponent `rho^2 / (2 - rho^2)`.
    pub exponent: f64,
    pub tau_star: f64,
}

impl BoundReport {
    pub fn evaluate(k: u32, rho: f64, d_max: u64) -> Result<Self> {
        Ok(Self {
            k,
            rho,
            d_max,
            upper: upper_bound(k, rho, d_max)?,
            lower: lower_bound(k, rho)?,
            exponent: error_exponent(rho)?,
            tau_star: tau_star(k)?,
        })
    }
}

//! Least-squares fit of `log2(p_err)` against the message size.

use std::io::Write;

use crate::bounds::error_exponent;
use crate::estimators::EstimatorKind;
use crate::stats::least_squares;
use crate::{Error, Result};

use super::ResultRow;

/// Rows with fewer observed errors are too noisy in the log domain.
pub const MIN_FIT_ERRORS: u64 = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentFit {
    pub estimator: EstimatorKind,
    /// Free-fit slope of `log2(p_err)` per message bit (negative when errors
    /// decay).
    pub slope_bits: f64,
    /// `2^intercept` of the free fit.
    pub intercept_c: f64,
    /// Best constant `c` for `c * 2^(-k * exponent)` with the theoretical
    /// exponent held fixed.
    pub c_hat: f64,
    /// `rho^2 / (2 - rho^2)` for the rows' correlation.
    pub theoretical_exponent: f64,
    pub k_range: (u32, u32),
    /// RMS residual of the free fit, in log2 units.
    pub residual: f64,
    pub rows_used: usize,
}

/// Fit rows of a single estimator. Rows with fewer than
/// [`MIN_FIT_ERRORS`] errors are left out; at least three must remain.
pub fn fit_exponent(rows: &[ResultRow]) -> Result<ExponentFit> {
    let estimator = rows
        .first()
        .ok_or(Error::InsufficientRows {
            usable: 0,
            min_errors: MIN_FIT_ERRORS,
        })?
        .estimator;
    if rows.iter().any(|r| r.estimator != estimator) {
        return Err(Error::Config(
            "exponent fit rows must come from one estimator".into(),
        ));
    }
    let usable: Vec<&ResultRow> = rows
        .iter()
        .filter(|r| r.errors >= MIN_FIT_ERRORS && r.p_err > 0.0)
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientRows {
            usable: usable.len(),
            min_errors: MIN_FIT_ERRORS,
        });
    }
    let rho = usable[0].rho;
    if usable.iter().any(|r| r.rho != rho) {
        return Err(Error::Config(
            "exponent fit rows must share one correlation".into(),
        ));
    }
    let exponent = error_exponent(rho)?;
    let ks: Vec<f64> = usable.iter().map(|r| r.k as f64).collect();
    let logs: Vec<f64> = usable.iter().map(|r| r.p_err.log2()).collect();
    let line = least_squares(&ks, &logs);
    let log2_c = ks
        .iter()
        .zip(&logs)
        .map(|(k, l)| l + exponent * k)
        .sum::<f64>()
        / ks.len() as f64;
    let k_min = usable.iter().map(|r| r.k).min().unwrap_or_default();
    let k_max = usable.iter().map(|r| r.k).max().unwrap_or_default();
    Ok(ExponentFit {
        estimator,
        slope_bits: line.slope,
        intercept_c: line.intercept.exp2(),
        c_hat: log2_c.exp2(),
        theoretical_exponent: exponent,
        k_range: (k_min, k_max),
        residual: line.rms_residual,
        rows_used: usable.len(),
    })
}

pub const FIT_HEADER: [&str; 9] = [
    "estimator",
    "slope_bits",
    "c_hat",
    "intercept_c",
    "theoretical_exponent",
    "k_min",
    "k_max",
    "residual",
    "rows_used",
];

/// One-row CSV: the fitted slope next to the theoretical exponent.
pub fn write_fit<W: Write>(fit: &ExponentFit, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIT_HEADER)?;
    w.write_record([
        fit.estimator.tag().to_string(),
        format!("{:.16e}", fit.slope_bits),
        format!("{:.16e}", fit.c_hat),
        format!("{:.16e}", fit.intercept_c),
        format!("{:.16e}", fit.theoretical_exponent),
        fit.k_range.0.to_string(),
        fit.k_range.1.to_string(),
        format!("{:.16e}", fit.residual),
        fit.rows_used.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

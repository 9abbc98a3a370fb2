//! Result rows and their CSV form.
//!
//! Header: `estimator,k,n_samples,rho,snr_db,d_max,trials,errors,p_err,ci_low,ci_high,master_seed`.
//! Reals are written with 17 significant digits so a load after a persist
//! reproduces every field exactly; `snr_db` is `inf` when `rho = 1`.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::estimators::EstimatorKind;
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "estimator",
    "k",
    "n_samples",
    "rho",
    "snr_db",
    "d_max",
    "trials",
    "errors",
    "p_err",
    "ci_low",
    "ci_high",
    "master_seed",
];

/// Error statistics of one estimator at one message size.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub estimator: EstimatorKind,
    pub k: u32,
    pub n_samples: u64,
    pub rho: f64,
    pub snr_db: f64,
    pub d_max: u64,
    pub trials: u64,
    pub errors: u64,
    pub p_err: f64,
    /// 95% Wilson score interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub master_seed: u64,
}

fn real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub fn write_results<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.estimator.tag().to_string(),
            r.k.to_string(),
            r.n_samples.to_string(),
            real(r.rho),
            real(r.snr_db),
            r.d_max.to_string(),
            r.trials.to_string(),
            r.errors.to_string(),
            real(r.p_err),
            real(r.ci_low),
            real(r.ci_high),
            r.master_seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Write to `path`, creating missing parent directories.
pub fn persist_results(rows: &[ResultRow], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    write_results(rows, File::create(path)?)
}

/// Parse rows; `source` names the input in error messages.
pub fn read_results<R: Read>(input: R, source: &Path) -> Result<Vec<ResultRow>> {
    let malformed = |line: u64, message: String| Error::Malformed {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
    let mut records = reader.records();
    let header = match records.next() {
        Some(h) => h.map_err(|e| malformed(1, e.to_string()))?,
        None => return Err(malformed(1, "missing header".into())),
    };
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(malformed(
            1,
            format!("expected header {:?}", CSV_HEADER.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != CSV_HEADER.len() {
            return Err(malformed(
                line,
                format!("expected {} fields, got {}", CSV_HEADER.len(), record.len()),
            ));
        }
        let field = |i: usize| record.get(i).unwrap_or_default().trim();
        macro_rules! parse {
            ($i:expr, $t:ty) => {
                field($i).parse::<$t>().map_err(|e| {
                    malformed(line, format!("{}: {:?}: {e}", CSV_HEADER[$i], field($i)))
                })?
            };
        }
        let estimator: EstimatorKind = field(0)
            .parse()
            .map_err(|e: Error| malformed(line, e.to_string()))?;
        let row = ResultRow {
            estimator,
            k: parse!(1, u32),
            n_samples: parse!(2, u64),
            rho: parse!(3, f64),
            snr_db: parse!(4, f64),
            d_max: parse!(5, u64),
            trials: parse!(6, u64),
            errors: parse!(7, u64),
            p_err: parse!(8, f64),
            ci_low: parse!(9, f64),
            ci_high: parse!(10, f64),
            master_seed: parse!(11, u64),
        };
        if row.errors > row.trials {
            return Err(malformed(line, "errors exceed trials".into()));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn load_results(path: &Path) -> Result<Vec<ResultRow>> {
    read_results(File::open(path)?, path)
}

//! Experiment configuration files and list syntaxes shared with the CLI.
//!
//! A config file is flat TOML whose keys mirror the `run` flags:
//!
//! ```toml
//! snr_db = 20.0          # or: rho = 0.7071
//! dmax = 150
//! k = "6:2:14"           # same syntax as --k, or an array [6, 8, 10]
//! estimators = "mie,onebit,rd"
//! trials = 10000
//! seed = 1
//! rd_rate = 1.0
//! n_samples = 4096       # optional, defaults to 2^k
//! out = "results.csv"
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::estimators::EstimatorKind;
use crate::model::{snr_db_to_model, CorrelationModel};
use crate::{Error, Result};

use super::ExperimentConfig;

/// Parse `6,8,10`, `6:14` (step 1), `6:2:14`, or a comma-separated mix.
pub fn parse_k_values(text: &str) -> Result<Vec<u32>> {
    let bad = |part: &str| Error::Config(format!("invalid k list element {part:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let nums = part
            .split(':')
            .map(|n| n.trim().parse::<u32>().map_err(|_| bad(part)))
            .collect::<Result<Vec<_>>>()?;
        match nums[..] {
            [k] => out.push(k),
            [start, end] => out.extend(start..=end),
            [start, step, end] if step > 0 => out.extend((start..=end).step_by(step as usize)),
            _ => return Err(bad(part)),
        }
    }
    if out.is_empty() {
        return Err(Error::Config("k list is empty".into()));
    }
    Ok(out)
}

/// Parse a comma-separated estimator list such as `mie,onebit,rd`.
pub fn parse_estimators(text: &str) -> Result<Vec<EstimatorKind>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum KSpec {
    List(Vec<u32>),
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub snr_db: Option<f64>,
    pub rho: Option<f64>,
    pub dmax: Option<u64>,
    pub k: Option<KSpec>,
    pub estimators: Option<String>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub rd_rate: Option<f64>,
    pub n_samples: Option<usize>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `flags` replace those in `self`. Setting either of
    /// `rho` / `snr_db` in `flags` replaces both.
    pub fn overridden_by(self, flags: FileConfig) -> FileConfig {
        let model_from_flags = flags.rho.is_some() || flags.snr_db.is_some();
        FileConfig {
            snr_db: if model_from_flags { flags.snr_db } else { self.snr_db },
            rho: if model_from_flags { flags.rho } else { self.rho },
            dmax: flags.dmax.or(self.dmax),
            k: flags.k.or(self.k),
            estimators: flags.estimators.or(self.estimators),
            trials: flags.trials.or(self.trials),
            seed: flags.seed.or(self.seed),
            rd_rate: flags.rd_rate.or(self.rd_rate),
            n_samples: flags.n_samples.or(self.n_samples),
            out: flags.out.or(self.out),
        }
    }

    pub fn model(&self) -> Result<CorrelationModel> {
        match (self.rho, self.snr_db) {
            (Some(_), Some(_)) => Err(Error::Config("set only one of rho and snr_db".into())),
            (Some(rho), None) => CorrelationModel::new(rho),
            (None, Some(db)) => snr_db_to_model(db),
            (None, None) => Err(Error::Config("one of rho or snr_db is required".into())),
        }
    }

    /// Resolve into a validated experiment plus the optional output path.
    pub fn into_experiment(self) -> Result<(ExperimentConfig, Option<PathBuf>)> {
        let model = self.model()?;
        let d_max = self
            .dmax
            .ok_or_else(|| Error::Config("dmax is required".into()))?;
        let k_values = match self.k {
            Some(KSpec::List(v)) => v,
            Some(KSpec::Text(t)) => parse_k_values(&t)?,
            None => return Err(Error::Config("k is required".into())),
        };
        let mut config = ExperimentConfig::new(model, d_max, k_values);
        if let Some(e) = &self.estimators {
            config.estimators = parse_estimators(e)?;
        }
        if let Some(t) = self.trials {
            config.trials = t;
        }
        if let Some(s) = self.seed {
            config.master_seed = s;
        }
        if let Some(r) = self.rd_rate {
            config.rd_rate = r;
        }
        config.n_samples = self.n_samples;
        config.validate()?;
        Ok((config, self.out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_syntaxes() {
        assert_eq!(parse_k_values("6,8,10").unwrap(), vec![6, 8, 10]);
        assert_eq!(parse_k_values("6:9").unwrap(), vec![6, 7, 8, 9]);
        assert_eq!(parse_k_values("6:2:14").unwrap(), vec![6, 8, 10, 12, 14]);
        assert_eq!(parse_k_values("4, 6:2:10").unwrap(), vec![4, 6, 8, 10]);
        assert!(parse_k_values("").is_err());
        assert!(parse_k_values("6:0:8").is_err());
        assert!(parse_k_values("a").is_err());
        assert!(parse_k_values("1:2:3:4").is_err());
    }

    #[test]
    fn estimator_lists() {
        assert_eq!(
            parse_estimators("mie, onebit,rd").unwrap(),
            vec![EstimatorKind::Mie, EstimatorKind::OneBit, EstimatorKind::Rd]
        );
        assert!(parse_estimators("mie,xcorr").is_err());
    }

    #[test]
    fn file_then_flags() {
        let file = FileConfig::parse(
            r#"
            snr_db = 20.0
            dmax = 150
            k = "8:2:12"
            estimators = "mie,onebit,rd"
            trials = 500
            seed = 7
            out = "a.csv"
            "#,
        )
        .unwrap();
        let flags = FileConfig {
            rho: Some(0.5),
            trials: Some(1000),
            ..Default::default()
        };
        let (cfg, out) = file.overridden_by(flags).into_experiment().unwrap();
        assert_eq!(cfg.model.rho(), 0.5);
        assert_eq!(cfg.trials, 1000);
        assert_eq!(cfg.master_seed, 7);
        assert_eq!(cfg.k_values, vec![8, 10, 12]);
        assert_eq!(cfg.d_max, 150);
        assert_eq!(cfg.estimators.len(), 3);
        assert_eq!(out, Some(PathBuf::from("a.csv")));
    }

    #[test]
    fn file_accepts_k_arrays_and_rejects_unknown_keys() {
        let f = FileConfig::parse("rho = 1.0\ndmax = 0\nk = [4, 5]").unwrap();
        assert_eq!(f.k, Some(KSpec::List(vec![4, 5])));
        assert!(FileConfig::parse("bogus = 1").is_err());
        assert!(FileConfig::parse("rho = 0.5\nsnr_db = 1.0\ndmax = 1\nk = \"4\"")
            .unwrap()
            .into_experiment()
            .is_err());
        assert!(FileConfig::parse("rho = 0.5\nk = \"4\"")
            .unwrap()
            .into_experiment()
            .is_err());
    }
}

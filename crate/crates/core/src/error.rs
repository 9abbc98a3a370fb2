use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("correlation coefficient {0} outside (0, 1]")]
    RhoOutOfRange(f64),

    #[error("SNR {0} dB is not finite or below -100 dB")]
    SnrOutOfRange(f64),

    #[error("noise variance {name} = {value} must be finite and nonnegative")]
    NoiseVariance { name: &'static str, value: f64 },

    #[error("delay {delay} outside [-{d_max}, {d_max}]")]
    DelayOutOfRange { delay: i64, d_max: u64 },

    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: f64,
        got: f64,
    },

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("{n} samples need more than {k} bits to index")]
    IndexNotRepresentable { n: usize, k: u32 },

    #[error("message length {got} does not match k = {expected}")]
    MessageLength { expected: u32, got: usize },

    #[error("invalid message character {0:?}, expected '0' or '1'")]
    InvalidBit(char),

    #[error("message size k = {0} outside 1..=63")]
    BadMessageSize(u32),

    #[error("signal window [{have_lo}, {have_hi}] does not cover [{need_lo}, {need_hi}]")]
    WindowTooShort {
        need_lo: i64,
        need_hi: i64,
        have_lo: i64,
        have_hi: i64,
    },

    #[error("{what} must be positive, got {got}")]
    NotPositive { what: &'static str, got: f64 },

    #[error("rate {rate} bits/sample does not split {k} bits into whole samples")]
    BudgetSplit { rate: f64, k: u32 },

    #[error("exponent fit needs at least 3 rows with >= {min_errors} errors, got {usable}")]
    InsufficientRows { usable: usize, min_errors: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: line {line}: {message}")]
    Malformed {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("trial {trial} failed: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

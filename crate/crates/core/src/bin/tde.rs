//! Command-line front end: `run`, `bounds`, `fit` and `check`.

use std::error::Error;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use extremum_tde::bounds::{self, checks, BoundReport};
use extremum_tde::estimators::EstimatorKind;
use extremum_tde::harness::{self, FileConfig, KSpec};
use extremum_tde::model::{snr_db_to_model, CorrelationModel};

#[derive(Debug, Parser)]
#[command(name = "tde", version, about = "Time-delay estimation under a k-bit budget")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo error rates per estimator and message size
    Run(RunArgs),
    /// Tabulate the closed-form bounds over a k range
    Bounds(BoundsArgs),
    /// Fit the error exponent to a results CSV
    Fit(FitArgs),
    /// Run the deterministic inequality checks
    Check,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Flat TOML file with the same keys as the flags; flags win
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rho")]
    snr_db: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    /// Maximum absolute delay in samples
    #[arg(long)]
    dmax: Option<u64>,
    /// Message sizes: "6,8,10", "6:14" or "6:2:14"
    #[arg(long)]
    k: Option<String>,
    /// Comma-separated subset of mie,mle,onebit,rd
    #[arg(long)]
    estimators: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Bits per sample for the RD benchmark (rate * block = k)
    #[arg(long)]
    rd_rate: Option<f64>,
    /// Encoder block length (defaults to 2^k)
    #[arg(long)]
    n_samples: Option<usize>,
    /// Output CSV (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the first N trials of each k to stderr
    #[arg(long, num_args = 0..=1, default_missing_value = "10")]
    trace: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, conflicts_with = "snr_db", required_unless_present = "snr_db")]
    rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    #[arg(long)]
    k: String,
    #[arg(long)]
    dmax: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "mie")]
    estimator: String,
    /// Also write the fit as CSV here
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Bounds(args) => print_bounds(args),
        Command::Fit(args) => fit(args),
        Command::Check => check(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(args: RunArgs) -> Result<ExitCode, Box<dyn Error>> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        snr_db: args.snr_db,
        rho: args.rho,
        dmax: args.dmax,
        k: args.k.map(KSpec::Text),
        estimators: args.estimators,
        trials: args.trials,
        seed: args.seed,
        rd_rate: args.rd_rate,
        n_samples: args.n_samples,
        out: args.out,
    };
    let (config, out) = file.overridden_by(flags).into_experiment()?;

    if let Some(limit) = args.trace {
        for &k in &config.k_values {
            let point = config.sweep_point(k)?;
            for i in 0..limit.min(config.trials) {
                let o = harness::run_trial(&point, i)?;
                let msg = o.message.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
                let est: Vec<String> = o
                    .estimates
                    .iter()
                    .map(|(kind, d)| format!("{kind}={d}"))
                    .collect();
                eprintln!(
                    "trace k={k} trial={i} d={} msg={msg} {}",
                    o.true_delay,
                    est.join(" ")
                );
            }
        }
    }

    let rows = harness::run_experiment(&config)?;
    for r in &rows {
        eprintln!(
            "{:>6} k={:<3} errors={:<8} p_err={:.4e} [{:.3e}, {:.3e}]",
            r.estimator.tag(),
            r.k,
            r.errors,
            r.p_err,
            r.ci_low,
            r.ci_high
        );
    }
    match out {
        Some(path) => harness::persist_results(&rows, &path)?,
        None => harness::write_results(&rows, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn print_bounds(args: BoundsArgs) -> Result<ExitCode, Box<dyn Error>> {
    let model: CorrelationModel = match (args.rho, args.snr_db) {
        (Some(rho), _) => CorrelationModel::new(rho)?,
        (None, Some(db)) => snr_db_to_model(db)?,
        (None, None) => unreachable!("clap requires one of --rho/--snr-db"),
    };
    let ks = harness::parse_k_values(&args.k)?;
    let reports = ks
        .iter()
        .map(|&k| BoundReport::evaluate(k, model.rho(), args.dmax))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = io::stdout().lock();
    match args.format {
        Format::Csv => {
            writeln!(out, "k,rho,d_max,upper,lower,exponent,tau_star")?;
            for r in &reports {
                writeln!(
                    out,
                    "{},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e}",
                    r.k, r.rho, r.d_max, r.upper, r.lower, r.exponent, r.tau_star
                )?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:>4} {:>10} {:>6} {:>12} {:>12} {:>10} {:>9}",
                "k", "rho", "d_max", "upper", "lower", "exponent", "tau*"
            )?;
            for r in &reports {
                writeln!(
                    out,
                    "{:>4} {:>10.6} {:>6} {:>12.4e} {:>12.4e} {:>10.6} {:>9.4}",
                    r.k, r.rho, r.d_max, r.upper, r.lower, r.exponent, r.tau_star
                )?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn fit(args: FitArgs) -> Result<ExitCode, Box<dyn Error>> {
    let kind: EstimatorKind = args.estimator.parse()?;
    let rows: Vec<_> = harness::load_results(&args.input)?
        .into_iter()
        .filter(|r| r.estimator == kind)
        .collect();
    if rows.is_empty() {
        return Err(format!("no {kind} rows in {}", args.input.display()).into());
    }
    let fit = harness::fit_exponent(&rows)?;
    eprintln!(
        "{kind}: slope {:.4} bits/bit (theory {:.4}), c_hat {:.4}, residual {:.3e}, k {}..{} ({} rows)",
        fit.slope_bits,
        -fit.theoretical_exponent,
        fit.c_hat,
        fit.residual,
        fit.k_range.0,
        fit.k_range.1,
        fit.rows_used
    );
    harness::write_fit(&fit, io::stdout().lock())?;
    if let Some(path) = args.out {
        harness::write_fit(&fit, std::fs::File::create(path)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn check() -> Result<ExitCode, Box<dyn Error>> {
    let outcomes = checks::run_all()?;
    for o in &outcomes {
        println!("{o}");
    }
    let e2 = bounds::expected_max(2)?;
    println!("[INFO] expected_max(2) = {e2:.12} (1/sqrt(pi) = {:.12})", 1.0 / std::f64::consts::PI.sqrt());
    Ok(if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

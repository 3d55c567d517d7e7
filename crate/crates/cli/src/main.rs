//! `heaps`: type-token curves, log-log fits and urn-model sweeps from the
//! command line. Every subcommand writes one artifact into the output
//! directory (`--out`, else `$HEAPS_OUT_DIR`, else the working directory).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heaps_core::curves::{Scheme, Statistic, DEFAULT_BAND, DEFAULT_STEP};
use heaps_core::regress::{LogBase, Model};
use heaps_core::urn::DEFAULT_PRECISION_BITS;

#[derive(Parser, Debug)]
#[command(name = "heaps", version, about = "Quadratic log-log analysis of type-token growth")]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, env = "HEAPS_OUT_DIR", default_value = ".")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strip Gutenberg boilerplate, tokenize, and write `<id>.tokens.txt` and `<id>.census.csv`.
    Ingest { input: PathBuf },
    /// Build a type-token curve from a token file; writes `<id>.<scheme>.csv`.
    Curve {
        tokens: PathBuf,
        #[arg(long, default_value_t = Scheme::Prefix)]
        scheme: Scheme,
        /// Geometric spacing of logsample token counts.
        #[arg(long, default_value_t = 1.01)]
        ratio: f64,
        /// Collapse replicate windows of each size into one point.
        #[arg(long)]
        statistic: Option<Statistic>,
    },
    /// Fit a curve CSV, or every curve CSV in a directory plus a median row.
    Fit {
        input: PathBuf,
        #[arg(long, default_value_t = Model::Quadratic)]
        model: Model,
        #[arg(long = "log-base", default_value_t = LogBase::E)]
        log_base: LogBase,
        /// Aggregate replicate windows before fitting.
        #[arg(long)]
        statistic: Option<Statistic>,
    },
    /// Local log10-log10 slopes over sliding bands; writes `<id>.slopes.csv`.
    Slopes {
        curve: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
    },
    /// Urn-model analytics.
    Urn {
        #[command(subcommand)]
        command: UrnCommand,
    },
}

#[derive(Args, Debug, Clone)]
struct Dictionary {
    /// Zipf exponent(s); decimals are read exactly. Defaults to 1.01, or the
    /// five-exponent grid for `sweep`.
    #[arg(long = "zipf-a", value_delimiter = ',')]
    zipf_a: Vec<String>,
    #[arg(long = "dict-size", default_value_t = 50)]
    dict_size: usize,
    #[arg(long = "precision-bits", default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: usize,
}

#[derive(Subcommand, Debug)]
enum UrnCommand {
    /// Expected type counts for every integer T in [t-min, t-max]; writes `urn_expect.csv`.
    Expect {
        #[command(flatten)]
        dict: Dictionary,
        #[arg(long = "t-min", default_value_t = 1)]
        t_min: u64,
        #[arg(long = "t-max", default_value_t = 402)]
        t_max: u64,
        /// Sample without replacement from this census instead of a Zipf dictionary.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Pseudo-variance and fitted curvature per Zipf exponent; writes `urn_sweep.csv`.
    Sweep {
        #[command(flatten)]
        dict: Dictionary,
        /// Token counts at which half the pseudo-variance is reported.
        #[arg(long, value_delimiter = ',', default_value = "50,80")]
        tokens: Vec<usize>,
        #[arg(long = "t-min", default_value_t = 20.0)]
        t_min: f64,
        #[arg(long = "t-max", default_value_t = 402.0)]
        t_max: f64,
        /// Fit at every integer T instead of a log-uniform grid.
        #[arg(long)]
        integer_grid: bool,
    },
    /// Seeded Monte Carlo against the exact expectation; writes `urn_mc.csv`.
    Mc {
        #[command(flatten)]
        dict: Dictionary,
        #[arg(long, value_delimiter = ',', default_value = "10,50,100,200,400")]
        tokens: Vec<u64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: {}", one_line(first.trim_start_matches("error:")));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(written) => {
            for path in written {
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", one_line(&format!("{e:#}")));
            ExitCode::FAILURE
        }
    }
}

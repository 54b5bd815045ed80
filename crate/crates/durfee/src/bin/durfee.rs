//! Thin command-line front end: argument parsing and dispatch only; all
//! computation and report writing lives in the library.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use durfee::cli::{
    cmd_check, cmd_fit, cmd_moments, cmd_report, cmd_table, load_tolerances, CommandOutcome,
    OutputFormat, RunConfig, SampleSpec,
};
use durfee::{HalfInteger, Result};

#[derive(Parser)]
#[command(
    name = "durfee",
    version,
    about = "Exact Durfee-square (h-index) statistics over integer partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Suppress the version/timestamp header line.
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Table order: exact rows are computed for all n up to this bound.
    #[arg(long, default_value_t = 6400)]
    nmax: usize,
    /// Maximum moment order K (even, 4..=14).
    #[arg(long, default_value_t = 12)]
    order: u32,
    /// Sample of n values: `squares:imin..imax` or an explicit list `a,b,c`.
    #[arg(long, default_value = "squares:40..80")]
    sample: String,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the exact table d(n,k) (or normalized probabilities) for n <= nmax.
    Table {
        #[arg(long, default_value_t = 6400)]
        nmax: usize,
        /// Only rows with perfect-square n.
        #[arg(long)]
        squares_only: bool,
        /// Emit exact probabilities d(n,k)/p(n) instead of counts.
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact means and central moments, float standardized moments, per sampled n.
    Moments {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit asymptotic expansions to the mean, the variance and each alpha_k.
    Fit {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Basis exponents for the mean/variance fits (half-integers, descending).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        basis: Option<Vec<String>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check the table against brute-force partition enumeration.
    Check {
        /// Check every n up to this bound.
        #[arg(long, default_value_t = 40)]
        upto: usize,
        /// Permit enumeration past the safety bound (p(n) grows fast).
        #[arg(long)]
        allow_large_oracle: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Normality report: fitted limits of alpha_k vs normal moments, PASS/FAIL.
    Report {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Basis exponents for the alpha_k fits (must include 0, nothing positive).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        basis: Option<Vec<String>>,
        /// JSON file overriding per-order PASS/FAIL tolerances.
        #[arg(long, value_name = "FILE")]
        tolerances: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_basis(items: &[String]) -> Result<Vec<HalfInteger>> {
    items.iter().map(|s| s.parse()).collect()
}

fn apply_output(config: &mut RunConfig, output: &OutputArgs) -> Result<()> {
    config.format = output.format.parse::<OutputFormat>()?;
    config.no_header = output.no_header;
    Ok(())
}

fn apply_sweep(config: &mut RunConfig, sweep: &SweepArgs) -> Result<()> {
    config.nmax = sweep.nmax;
    config.moment_order = sweep.order;
    config.sample = sweep.sample.parse::<SampleSpec>()?;
    Ok(())
}

fn run(cli: Cli) -> Result<CommandOutcome> {
    let mut config = RunConfig::default();
    match &cli.command {
        Command::Table {
            nmax,
            squares_only,
            normalized,
            output,
        } => {
            config.nmax = *nmax;
            config.squares_only = *squares_only;
            config.normalized = *normalized;
            apply_output(&mut config, output)?;
            dispatch(cmd_table, &config, output)
        }
        Command::Moments { sweep, output } => {
            apply_sweep(&mut config, sweep)?;
            apply_output(&mut config, output)?;
            dispatch(cmd_moments, &config, output)
        }
        Command::Fit {
            sweep,
            basis,
            output,
        } => {
            apply_sweep(&mut config, sweep)?;
            apply_output(&mut config, output)?;
            if let Some(basis) = basis {
                config.mean_basis = parse_basis(basis)?;
            }
            dispatch(cmd_fit, &config, output)
        }
        Command::Check {
            upto,
            allow_large_oracle,
            output,
        } => {
            config.check_upto = *upto;
            config.allow_large_oracle = *allow_large_oracle;
            apply_output(&mut config, output)?;
            dispatch(cmd_check, &config, output)
        }
        Command::Report {
            sweep,
            basis,
            tolerances,
            output,
        } => {
            apply_sweep(&mut config, sweep)?;
            apply_output(&mut config, output)?;
            if let Some(basis) = basis {
                config.alpha_basis = parse_basis(basis)?;
            }
            if let Some(path) = tolerances {
                config.tolerances = load_tolerances(&fs::read_to_string(path)?)?;
            }
            dispatch(cmd_report, &config, output)
        }
    }
}

fn dispatch<F>(command: F, config: &RunConfig, output: &OutputArgs) -> Result<CommandOutcome>
where
    F: FnOnce(&RunConfig, &mut dyn Write) -> Result<CommandOutcome>,
{
    match &output.out {
        Some(path) => {
            let file = fs::File::create(path)?;
            let mut writer = BufWriter::new(file);
            let outcome = command(config, &mut writer)?;
            writer.flush()?;
            Ok(outcome)
        }
        None => {
            let stdout = io::stdout();
            let mut writer = BufWriter::new(stdout.lock());
            let outcome = command(config, &mut writer)?;
            writer.flush()?;
            Ok(outcome)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        // Quiet exit when the reader went away (e.g. piping into `head`).
        Err(durfee::Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

//! `cmtaylor`: Taylor coefficients of modular forms at CM points.

mod commands;
mod config;
mod modspec;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::ConfigFile;
use report::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl From<cmtaylor::taylor::TaylorError> for CliError {
    fn from(e: cmtaylor::taylor::TaylorError) -> Self {
        use cmtaylor::taylor::TaylorError as T;
        match e {
            T::BadPrime { .. }
            | T::UnknownForm(_)
            | T::UnknownPreset(_)
            | T::KappaUnresolved(_)
            | T::Quasimod(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<cmtaylor::numeric::NumericError> for CliError {
    fn from(e: cmtaylor::numeric::NumericError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<cmtaylor::congruence::CongruenceError> for CliError {
    fn from(e: cmtaylor::congruence::CongruenceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<cmtaylor::quasimod::QuasimodError> for CliError {
    fn from(e: cmtaylor::quasimod::QuasimodError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<cmtaylor::qseries::SeriesError> for CliError {
    fn from(e: cmtaylor::qseries::SeriesError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cmtaylor",
    version,
    about = "Taylor expansions of modular forms on Gamma0(4) around CM points"
)]
pub struct Cli {
    /// key = value file with defaults for any option below
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// output format
    #[arg(long, global = true, value_enum)]
    out: Option<Format>,
    /// shorthand for --out json
    #[arg(long, global = true)]
    json: bool,
    /// working precision in decimal digits (numerical oracle)
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// q-expansion truncation order
    #[arg(long, global = true)]
    order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a q-expansion as exponent/value pairs
    Series(commands::series::SeriesArgs),
    /// Check the q-expansion identities and derivation tables exactly
    Identities,
    /// Normalized Taylor coefficients at a CM point
    Taylor(commands::taylor::TaylorArgs),
    /// Detect eventual quasiperiodicity modulo p^A
    Congruence(commands::congruence::CongruenceArgs),
    /// Numerical raising-operator values with recognition
    Oracle(commands::oracle::OracleArgs),
    /// Re-run a worked example and compare with the published values
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(value_enum)]
    example: commands::reproduce::Example,
}

/// Options shared by all subcommands after merging flags and config file.
pub struct Globals {
    pub file: ConfigFile,
    pub prec: u32,
    pub order: usize,
}

fn run(cli: Cli) -> Result<(report::Report, Format), CliError> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let out = if cli.json {
        Some(Format::Json)
    } else {
        cli.out
    };
    let format = match out {
        Some(f) => f,
        None => match file.get("out") {
            None | Some("text") => Format::Text,
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(o) => {
                return Err(CliError::Usage(format!(
                    "config: invalid value {o:?} for out"
                )))
            }
        },
    };
    let prec = file.pick(cli.prec, "prec", cmtaylor::numeric::DEFAULT_DIGITS)?;
    let order = file.pick(cli.order, "order", 64usize)?;
    if prec < 10 || order == 0 {
        return Err(CliError::Usage(
            "--prec must be at least 10 and --order positive".into(),
        ));
    }
    let g = Globals { file, prec, order };
    let report = match cli.command {
        Command::Series(a) => commands::series::run(a, &g)?,
        Command::Identities => commands::identities::run(&g)?,
        Command::Taylor(a) => commands::taylor::run(a, &g)?,
        Command::Congruence(a) => commands::congruence::run(a, &g)?,
        Command::Oracle(a) => commands::oracle::run(a, &g)?,
        Command::Reproduce(a) => commands::reproduce::run(a.example, &g)?,
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("run `cmtaylor --help` for usage");
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

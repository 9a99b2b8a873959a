//! The `terracini` command line: exact defect reports, classification,
//! secant estimates, searches and a fixed checklist of known values.

pub mod checklist;
pub mod commands;
pub mod input;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use terracini_core::linalg::is_prime_u64;

pub use input::{parse_config, Job};

/// Default primes for the modular cross-checks.
pub const CLI_PRIMES: [u64; 2] = [65521, 65537];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Core(#[from] terracini_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Core(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Cohomology, defect and membership of a scheme.
    Defect,
    /// Pattern tag of a three-point set against its computed membership.
    Classify,
    /// Lower bound for the dimension of a secant variety.
    Secant,
    /// Search for large defects, or sweep the three-point classification.
    Search,
    /// Run the fixed checklist of known values.
    VerifyPaper,
}

#[derive(Debug, Parser)]
#[command(name = "terracini", version, about = "Exact Terracini defects of double points on Segre varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON payload file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// JSON payload given directly.
    #[arg(long, global = true, conflicts_with = "input")]
    pub inline: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Comma-separated primes above 2^15 for modular cross-checks.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    pub primes: Vec<u64>,
}

/// A command's report and exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: serde_json::Value,
    pub code: i32,
}

fn check_primes(primes: &[u64]) -> Result<Vec<u64>, CliError> {
    if primes.is_empty() {
        return Ok(CLI_PRIMES.to_vec());
    }
    for &p in primes {
        if p <= 1 << 15 || !is_prime_u64(p) {
            return Err(CliError::Invalid(format!("{p} is not a prime above 2^15")));
        }
    }
    Ok(primes.to_vec())
}

fn load(cli: &Cli) -> Result<Option<Job>, CliError> {
    let bytes = match (&cli.input, &cli.inline) {
        (Some(path), _) => std::fs::read(path)?,
        (None, Some(s)) => s.clone().into_bytes(),
        (None, None) => return Ok(None),
    };
    parse_config(&bytes).map(Some)
}

/// Runs a parsed command line and returns the report.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = Options {
        seed: cli.seed,
        trials: cli.trials as usize,
        primes: check_primes(&cli.primes)?,
    };
    let job = load(cli)?;
    let need = || job.clone().ok_or_else(|| CliError::Invalid("this command needs --input or --inline".into()));
    match cli.command {
        Command::Defect => commands::defect(&need()?, &opts),
        Command::Classify => commands::classify(&need()?, &opts),
        Command::Secant => commands::secant(&need()?, &opts),
        Command::Search => commands::search(&need()?, &opts),
        Command::VerifyPaper => commands::verify_paper(&opts),
    }
}

pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize"),
        Format::Table => table::render(&outcome.report),
    }
}

/// Entry point used by the binary. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", render(&outcome, cli.format));
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

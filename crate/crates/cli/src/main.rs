use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod bench;
mod convert;
mod oracle;
mod solve;

/// Local search for the generalized traveling salesman problem.
#[derive(Debug, Parser)]
#[command(name = "gtsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and print the tour.
    Solve(solve::SolveArgs),
    /// Cluster a TSPLIB instance into a GTSP file.
    Convert(convert::ConvertArgs),
    /// Run a benchmark manifest and write the reports.
    Bench(bench::BenchArgs),
    /// Compare fast algorithms with brute force on random instances.
    OracleCheck(oracle::OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A failure with its process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const MISMATCH: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const INFEASIBLE: u8 = 4;

    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(Self::USAGE, message)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

pub fn display_path(p: &std::path::Path) -> String {
    p.display().to_string()
}

pub fn read_instance(path: &PathBuf) -> Result<gtsp_core::GtspInstance, Failure> {
    let file =
        std::fs::File::open(path).map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", display_path(path))))?;
    gtsp_core::read_instance(file).map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", display_path(path))))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve::run(args),
        Command::Convert(args) => convert::run(args),
        Command::Bench(args) => bench::run(args),
        Command::OracleCheck(args) => oracle::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

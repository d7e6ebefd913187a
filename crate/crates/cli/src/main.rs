//! `riesz`: identity sweeps, coefficient transforms and model reports.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on a
//! usage or configuration error.

mod identities;
mod model_report;
mod output;
mod transform;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Check(riesz_core::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Check(_) | CliError::Failed(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "riesz",
    version,
    about = "Riesz means, kernel expansions and their exact coefficient maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact sweeps of the coefficient consistency identities
    Identities(identities::IdentitiesArgs),
    /// Convert a coefficient file to another expansion kind
    Transform(transform::TransformArgs),
    /// Spectral sums, fits and exact tables for one model problem
    ModelReport(model_report::ModelReportArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Identities(args) => identities::run(args),
        Command::Transform(args) => transform::run(args),
        Command::ModelReport(args) => model_report::run(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

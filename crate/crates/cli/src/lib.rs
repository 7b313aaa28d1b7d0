//! Library side of the `rdk` binary: argument parsing into a serializable
//! [`RunConfig`], size guards, and one runner per subcommand.

use std::io::Write;

use thiserror::Error;

use rdk_core::charsum::CharsumError;
use rdk_core::gf::GfError;
use rdk_core::{Field, Fq};
use rdk_core::permcheck::PermError;
use rdk_core::rdpoly::RdpError;

pub mod config;
mod eval;
mod info;
mod output;
mod poly;
mod pp;
pub mod spans;
mod sums;
mod verify;

pub use config::{Cli, CommandConfig, Format, Method, PpCriterion, RunConfig, VerifyTarget};
pub use output::Outcome;
pub use spans::Spans;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Rdp(#[from] RdpError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Charsum(#[from] CharsumError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn build_field(config: &RunConfig) -> Result<Field, CliError> {
    Ok(Field::from_descriptor(&config.descriptor()?)?)
}

/// `3` over a prime field, `(1,2)` over an extension.
pub(crate) fn elem_text(field: &Field, x: Fq) -> String {
    let c = output::coords(&field.coords(x));
    if field.e() == 1 {
        c
    } else {
        format!("({c})")
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Executes a validated configuration.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    match &config.command {
        CommandConfig::Eval { .. } => eval::run(config),
        CommandConfig::Poly { .. } => poly::run(config),
        CommandConfig::Pp { .. } => pp::run(config),
        CommandConfig::Verify { .. } => verify::run(config),
        CommandConfig::Sums { .. } => sums::run(config),
        CommandConfig::FieldInfo => info::run(config),
    }
}

/// Runs a configuration end to end and returns the process exit code.
pub fn run(config: &RunConfig) -> u8 {
    let outcome = match execute(config) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.body),
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return EXIT_USAGE;
    }
    if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_FAILURE
    }
}

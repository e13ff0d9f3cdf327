//! Library half of the `fnr` binary: argument validation, file rendering
//! and the command implementations, kept here so integration tests can
//! drive them without a subprocess.

pub mod commands;
pub mod config;
pub mod error;
pub mod render;

use std::io::Write;

pub use config::{Cli, Command, Format, RunConfig};
pub use error::{CliError, CliResult};

/// Validates `cli` and runs its command, logging a summary to `log`.
pub fn run(cli: Cli, log: &mut dyn Write) -> CliResult<()> {
    let cfg = RunConfig::from_cli(cli)?;
    commands::run(&cfg, log)
}

/// Worker-count cap from `FNR_THREADS`; `None` when unset.
pub fn thread_cap(value: Option<&str>) -> CliResult<Option<usize>> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("FNR_THREADS={v:?}: expected a positive integer"))),
        },
    }
}

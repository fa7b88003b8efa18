//! Library side of the `brocard` command: the verification registry, table
//! builders and figure renderers, kept out of `main` so they can be tested
//! directly.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod svg;
pub mod table;

use std::io::Write;

pub use checks::{run_checks, CheckReport};
pub use config::{Mutation, OutputFormat, RunConfig};
pub use error::CliError;

/// Writes `bytes` to `config.output_path`, or stdout when unset.
pub fn emit(config: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &config.output_path {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Runs the selected checks and renders their report table.
pub fn verify(
    config: &RunConfig,
    filter: Option<&str>,
) -> Result<(Vec<u8>, Vec<CheckReport>), CliError> {
    config.validate()?;
    let reports = run_checks(config, filter)?;
    let mut buf = Vec::new();
    checks::report_table(&reports).write(config.output_format, &mut buf)?;
    Ok((buf, reports))
}

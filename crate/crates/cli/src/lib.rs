//! The `srg` command-line tool: sampling, exact regions, verification
//! suites, SVG rendering and eigenvalues for matrices read from JSON or CSV
//! files.
//!
//! Exit codes: 0 on success, 1 when a verification fails or no exact region
//! applies, 2 on any input error.

pub mod cli;
pub mod commands;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    #[error("{0}")]
    Input(String),
    /// A verification failed or the request is unsupported; exit code 1.
    /// The report has already been written.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<srg_core::io::ParseError> for CliError {
    fn from(e: srg_core::io::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<srg_core::SrgError> for CliError {
    fn from(e: srg_core::SrgError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return e.exit_code();
    }
    match commands::dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Applies `SRG_THREADS` to the global worker pool.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SRG_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| CliError::Input(format!("SRG_THREADS must be a positive integer, got `{value}`")))?;
    // A pool that already exists (repeated calls in one process) is kept.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

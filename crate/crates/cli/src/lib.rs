//! Command-line frontend: parses arguments, runs one engine command and writes its output.
//!
//! Exit codes: 0 on success, 2 when arguments fail validation, 1 when a computation fails
//! (for example the oracle cannot meet its truncation tolerance).

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use dsv_metrology::Error;

pub use args::{Cli, Command, OutputFormat};

/// Name of the environment variable that caps sweep parallelism.
pub const THREADS_ENV: &str = "DSVMET_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A failed command, split by which exit code it maps to.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{raw}`"
            ))),
        },
    }
}

/// Runs the CLI on `argv` (including the program name). Data goes to `stdout` unless
/// `--output` names a file; diagnostics go to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return code;
        }
    };

    let outcome = thread_cap().and_then(|cap| match cap {
        None => commands::dispatch(&cli.command),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Compute(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| commands::dispatch(&cli.command))),
    });
    let outcome = outcome.and_then(|rendered| rendered.write(stdout));

    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(
                stderr,
                "error: {msg}\n\nFor more information, try '--help'."
            );
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_COMPUTE
        }
    }
}

//! Command-line front end.
//!
//! Parameters are resolved from flags, then the `--config` file, then the
//! library defaults. Exit status is 0 on success, 2 on invalid input and 3
//! when an iteration did not converge (the partial report is still written).

mod args;
mod commands;
mod config;
mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::Parser;

pub use args::{Cli, Command, Format, ZetaMode};
pub use report::{format_f64, to_json_bytes, Cell, Report, Table};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

/// Input rejected before or during dispatch, tied to the flag responsible.
#[derive(Debug, Clone, PartialEq)]
pub struct Invalid {
    pub flag: String,
    pub reason: String,
}

impl Invalid {
    pub fn new(flag: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            flag: flag.into(),
            reason: reason.into(),
        }
    }
}

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.flag, self.reason)
    }
}

/// Maps a library error raised by a validation failure to the flag carrying
/// the offending value.
pub(crate) fn invalid_from(e: Error) -> Invalid {
    let flag = match &e {
        Error::InvalidParameter { name, .. } => match *name {
            "tolerance" => "--tol",
            "t_initial" => "--t-initial",
            "growth" => "--growth",
            "step" | "tau_step" => "--step",
            "threshold" => "--threshold",
            "epsilon" => "--epsilon",
            "probe_window" => "--probe-window",
            "probe_step" => "--probe-step",
            "lambda" => "--lambda",
            "j_max" => "--j-max",
            "initial_grid" => "--initial-grid",
            "N" => "--N",
            "x" => "--x",
            _ => "--signal",
        },
        Error::InvalidRange { .. } => "--range",
        Error::StepTooCoarse { .. } => "--probe-step",
        Error::ZeroExponent => "--lambda",
        _ => "--signal",
    };
    Invalid::new(flag, e.to_string())
}

/// A finished report and where it goes.
pub(crate) struct Outcome {
    pub report: Report,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub exit: i32,
}

/// Runs the command line `argv` (program name first) against the process's
/// standard streams and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match commands::execute(cli.command) {
        Ok(outcome) => emit(&outcome, stdout, stderr),
        Err(invalid) => {
            let _ = writeln!(stderr, "error: {invalid}");
            EXIT_INVALID
        }
    }
}

fn emit(outcome: &Outcome, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    for w in &outcome.report.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let json = outcome.report.to_json_bytes();
    let written = match (outcome.format, &outcome.out) {
        (Format::Json, None) => stdout.write_all(&json).map_err(|e| ("stdout".into(), e)),
        (Format::Json, Some(path)) => {
            std::fs::write(path, &json).map_err(|e| (path.display().to_string(), e))
        }
        (Format::Csv, None) => stdout
            .write_all(&outcome.report.trace.to_csv())
            .map_err(|e| ("stdout".into(), e)),
        (Format::Csv, Some(path)) => std::fs::write(path, outcome.report.trace.to_csv())
            .map_err(|e| (path.display().to_string(), e))
            .and_then(|_| stdout.write_all(&json).map_err(|e| ("stdout".into(), e))),
    };
    match written {
        Ok(()) => outcome.exit,
        Err((target, e)) => {
            let _ = writeln!(stderr, "error: --out: cannot write {target}: {e}");
            EXIT_INVALID
        }
    }
}

//! Command-line front end for `pythagorean-core`: CSV ingestion, one
//! subcommand per module, text/JSON/CSV reports and optional SVG plots.
//!
//! Exit status is 0 on success, 1 on a usage error and 2 on a data or
//! domain error.

pub mod args;
pub mod csv_io;
pub mod error;
pub mod report;
pub mod run;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use error::{CliError, Result};
pub use report::Report;
pub use run::{run, Command, OutputFormat, RunConfig};

/// Parses `argv`, runs the subcommand, and returns the process exit code.
/// Reports go to `out`; diagnostics go to `err`.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let config = RunConfig::from(cli);
    match run(&config, out) {
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

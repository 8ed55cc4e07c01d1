//! Command-line front end: transform evaluation, airfoil inversion,
//! spectrum classification, eigen checks, identity suites and norms.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod spec;

pub use args::Cli;
pub use config::{Format, RunConfig};
pub use error::{CliError, CliResult};
pub use spec::FunctionSpec;

/// Runs a parsed command line and returns its exit code. Errors are
/// printed to stderr.
pub fn run(cli: Cli) -> i32 {
    match commands::dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.code
        }
    }
}

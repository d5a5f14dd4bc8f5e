//! Command-line front end: argument definitions, subcommand runners and
//! output plumbing for the `caseiso` binary.
//!
//! Each subcommand writes its CSV output plus a `<out>.meta` sidecar of
//! `key=value` lines recording the resolved configuration, and prints a
//! `result key=value ...` summary line on stdout.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::io::Write;

pub use args::Cli;
pub use error::{CliError, CliResult};

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        args::Command::Bound(a) => commands::bound::run(a, stdout),
        args::Command::Classify(a) => commands::classify::run(a, stdout),
        args::Command::Dde(a) => commands::dde::run(a, stdout),
        args::Command::Netsim(a) => commands::netsim::run(a, stdout),
    }
}

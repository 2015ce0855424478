//! `noncentral`: spectra, verification runs, resolvent probes and coordinate
//! transforms from the command line.
//!
//! Exit status: 0 success, 1 domain error (invalid channel, unbound energy,
//! bad parameters), 2 numerical failure (non-convergence, divergent
//! resolvent, failed verification), 64 usage error, 74 output not writable.

mod args;
mod commands;
mod config;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;
use noncentral_core::ErrorKind;

use crate::args::Cli;
use crate::commands::RunError;

const EXIT_DOMAIN: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

fn main() -> ExitCode {
    let args: Vec<String> = match std::env::args_os().map(|a| a.into_string()).collect() {
        Ok(a) => a,
        Err(bad) => {
            eprintln!("error: argument is not valid UTF-8: {bad:?}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let args = match config::merge(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(RunError::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e.kind() {
                ErrorKind::Domain => EXIT_DOMAIN,
                ErrorKind::Numerical => EXIT_NUMERICAL,
            });
        }
    };

    let written = match &cli.command.output().output {
        Some(path) => fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    };
    if let Err(msg) = written {
        eprintln!("error: cannot write output: {msg}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(outcome.status)
}

//! `twirlmit` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 an emitted table failed
//! its self-check.

mod args;
mod commands;
mod config;
mod noise;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use output::InvariantViolation;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Mitigate(a) => commands::mitigate(a),
        Command::CorrectCounts(a) => commands::correct_counts(a),
        Command::Calibrate(a) => commands::calibrate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvariantViolation>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

//! `lfsm` command-line front end. Machine-readable JSON on stdout,
//! diagnostics on stderr. Exit codes: 0 success, 1 search exhaustion,
//! 2 invalid input.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

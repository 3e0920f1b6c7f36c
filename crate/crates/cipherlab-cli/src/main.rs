//! Batch front end: every cipher and attack in cipherlab behind stable,
//! scriptable subcommands. Reads text from standard input (or `--input`),
//! writes results to standard output, one-line errors to standard error.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error.

mod commands;

use clap::error::ErrorKind;
use clap::Parser;
use commands::Cli;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}: {err}", err.name());
            ExitCode::from(2)
        }
    }
}

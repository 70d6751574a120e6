use std::process::ExitCode;

use clap::Parser;
use rolecol::cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(verdict) => ExitCode::from(verdict.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

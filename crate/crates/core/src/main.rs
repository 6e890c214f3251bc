use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = froi::cli::Cli::parse();
    match froi::cli::run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("froi: {e}");
            ExitCode::FAILURE
        }
    }
}

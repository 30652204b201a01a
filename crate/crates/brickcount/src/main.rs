use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    brickcount::cli::run(brickcount::cli::Cli::parse())
}

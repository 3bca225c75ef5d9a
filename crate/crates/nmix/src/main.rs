use std::process::ExitCode;

use clap::Parser;
use nmix::cli::Cli;

fn main() -> ExitCode {
    ExitCode::from(nmix::run(Cli::parse()))
}

use std::process::ExitCode;

use clap::Parser;
use ewit::cli::{execute, Cli};

fn main() -> ExitCode {
    execute(&Cli::parse())
}

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    helpzc_cli::main_with(&helpzc_cli::Cli::parse())
}

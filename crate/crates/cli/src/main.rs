use std::process::ExitCode;

use clap::Parser;
use eulerfft_cli::{run, RunConfig};

fn main() -> ExitCode {
    run(&RunConfig::parse())
}

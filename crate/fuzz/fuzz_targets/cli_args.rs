#![no_main]

//! Command-line arguments, one per line. Only parsing and config resolution
//! run; no command writes files.

use clap::Parser;
use deltashock_cli::{Cli, Command};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("deltashock").chain(text.lines());
    let Ok(cli) = Cli::try_parse_from(args) else { return };
    match cli.command {
        Command::Solve(a) | Command::Limit(a) | Command::Simulate(a) => {
            if a.config.is_none() {
                if let Ok(p) = a.to_partial() {
                    let _ = p.resolve();
                }
            }
        }
        Command::Reproduce(a) => {
            let _ = a.experiment.parse::<deltashock_cli::commands::Experiment>();
        }
    }
});

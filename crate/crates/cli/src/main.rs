use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use deltashock_cli::commands::{self, Experiment};
use deltashock_cli::config::PartialConfig;
use deltashock_cli::{Cli, CliError, Command};

fn run(cli: Cli) -> Result<(), CliError> {
    let written = match cli.command {
        Command::Solve(a) => commands::solve(&a.to_partial()?.resolve()?)?,
        Command::Limit(a) => commands::limit(&a.to_partial()?.resolve()?)?,
        Command::Simulate(a) => commands::simulate(&a.to_partial()?.resolve()?)?,
        Command::Reproduce(a) => {
            let e: Experiment = a.experiment.parse()?;
            let overrides =
                PartialConfig { cells: a.cells, cfl: a.cfl, out: a.out, format: a.format, ..Default::default() };
            commands::reproduce(e, &commands::experiment_config(e, overrides)?)?
        }
    };
    for f in written.files {
        println!("{}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let err = CliError::Config(e.kind().to_string());
            eprint!("{e}");
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

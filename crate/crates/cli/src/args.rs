use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use deltashock::Model;

use crate::config::{parse_kv, Format, PartialConfig};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "deltashock", version, about = "Riemann solutions and delta-shock limits for Aw-Rascle type models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Riemann solution: writes waves.json and profile.csv.
    Solve(RunArgs),
    /// Convergence of the exact solution toward the delta-shock limit: writes limit.csv.
    Limit(RunArgs),
    /// WENO5 simulation: writes snapshot_t*.csv and report.json.
    Simulate(RunArgs),
    /// Rerun a bundled reference experiment (fig3..fig8, fig5-alt).
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Settings file with `key = value` lines; flags take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_model)]
    pub model: Option<Model>,
    #[arg(long, conflicts_with = "gammas", allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub gammas: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["RHO", "U"], allow_negative_numbers = true)]
    pub left: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["RHO", "U"], allow_negative_numbers = true)]
    pub right: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub cfl: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["XMIN", "XMAX"], allow_negative_numbers = true)]
    pub domain: Option<Vec<f64>>,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Points in the self-similar profile.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Extra snapshot times for `simulate`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub snapshots: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// fig3, fig4, fig5, fig5-alt, fig6, fig7 or fig8.
    pub experiment: String,
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub cfl: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn pair(v: Option<Vec<f64>>) -> Option<(f64, f64)> {
    v.map(|v| (v[0], v[1]))
}

impl RunArgs {
    /// Flags layered over the config file, if one was named.
    pub fn to_partial(&self) -> Result<PartialConfig, CliError> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                parse_kv(&text)?
            }
            None => PartialConfig::default(),
        };
        let flags = PartialConfig {
            model: self.model,
            gammas: self.gamma.map(|g| vec![g]).or_else(|| self.gammas.clone()),
            left: pair(self.left.clone()),
            right: pair(self.right.clone()),
            t_end: self.t_end,
            cells: self.cells,
            cfl: self.cfl,
            domain: pair(self.domain.clone()),
            out: self.out.clone(),
            format: self.format,
            samples: self.samples,
            snapshots: self.snapshots.clone(),
        };
        Ok(base.overlay(flags))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("deltashock").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn solve_flags() {
        let cli = parse(&["solve", "--model", "ar", "--gamma", "0.5", "--left", "3.5", "6", "--right", "2", "-4"]);
        let Command::Solve(a) = cli.command else { panic!() };
        let p = a.to_partial().unwrap();
        assert_eq!(p.model, Some(Model::Ar));
        assert_eq!(p.left, Some((3.5, 6.0)));
        assert_eq!(p.right, Some((2.0, -4.0)));
        assert_eq!(p.gammas, Some(vec![0.5]));
    }

    #[test]
    fn gamma_list_and_domain() {
        let cli = parse(&["limit", "--gammas", "0.6,0.1,0.01", "--domain", "-2", "2"]);
        let Command::Limit(a) = cli.command else { panic!() };
        let p = a.to_partial().unwrap();
        assert_eq!(p.gammas, Some(vec![0.6, 0.1, 0.01]));
        assert_eq!(p.domain, Some((-2.0, 2.0)));
    }

    #[test]
    fn gamma_and_gammas_conflict() {
        assert!(Cli::try_parse_from(["deltashock", "solve", "--gamma", "0.5", "--gammas", "0.4"]).is_err());
    }

    #[test]
    fn bad_model_is_rejected_by_the_parser() {
        assert!(Cli::try_parse_from(["deltashock", "solve", "--model", "euler"]).is_err());
    }
}

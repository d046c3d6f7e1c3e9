//! Run configuration: a `key = value` file merged under command-line flags.
//!
//! ```text
//! # AR experiment
//! model = ar
//! gammas = 0.6, 0.3, 0.1
//! left = 3.5 6
//! right = 2 4
//! t_end = 0.4
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use deltashock::scheme::Grid;
use deltashock::{Model, PrimState, RiemannData};
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_T_END: f64 = 0.4;
pub const DEFAULT_CELLS: usize = 400;
pub const DEFAULT_CFL: f64 = 0.4;
pub const DEFAULT_DOMAIN: (f64, f64) = (-4.0, 4.0);
pub const DEFAULT_SAMPLES: usize = 801;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Every setting optional, as read from one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub model: Option<Model>,
    pub gammas: Option<Vec<f64>>,
    pub left: Option<(f64, f64)>,
    pub right: Option<(f64, f64)>,
    pub t_end: Option<f64>,
    pub cells: Option<usize>,
    pub cfl: Option<f64>,
    pub domain: Option<(f64, f64)>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub samples: Option<usize>,
    pub snapshots: Option<Vec<f64>>,
}

impl PartialConfig {
    /// Fields set in `over` win.
    pub fn overlay(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            model: over.model.or(self.model),
            gammas: over.gammas.or(self.gammas),
            left: over.left.or(self.left),
            right: over.right.or(self.right),
            t_end: over.t_end.or(self.t_end),
            cells: over.cells.or(self.cells),
            cfl: over.cfl.or(self.cfl),
            domain: over.domain.or(self.domain),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            samples: over.samples.or(self.samples),
            snapshots: over.snapshots.or(self.snapshots),
        }
    }

    /// Validates and fills defaults. Every Riemann problem the run will
    /// build is constructed here so bad input never reaches a solver.
    pub fn resolve(self) -> Result<ExperimentConfig, CliError> {
        let model = self.model.ok_or_else(|| missing("model"))?;
        let left = self.left.ok_or_else(|| missing("left"))?;
        let right = self.right.ok_or_else(|| missing("right"))?;
        let gammas = match (model, self.gammas) {
            (Model::Pgd, None) => vec![1.0],
            (_, None) => return Err(missing("gamma")),
            (_, Some(g)) if g.is_empty() => return Err(CliError::Config("empty gamma list".into())),
            (_, Some(g)) => g,
        };
        let problems = gammas
            .iter()
            .map(|&g| RiemannData::new(model, g, PrimState::from(left), PrimState::from(right)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Config(e.to_string()))?;

        let t_end = self.t_end.unwrap_or(DEFAULT_T_END);
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(CliError::Config(format!("t_end must be positive, got {t_end}")));
        }
        let cfl = self.cfl.unwrap_or(DEFAULT_CFL);
        if !(cfl > 0.0 && cfl < 1.0) {
            return Err(CliError::Config(format!("cfl must lie in (0, 1), got {cfl}")));
        }
        let (x_min, x_max) = self.domain.unwrap_or(DEFAULT_DOMAIN);
        let grid = Grid::new(x_min, x_max, self.cells.unwrap_or(DEFAULT_CELLS))
            .map_err(|e| CliError::Config(e.to_string()))?;
        let samples = self.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples < 2 {
            return Err(CliError::Config(format!("samples must be at least 2, got {samples}")));
        }
        let mut snapshots = self.snapshots.unwrap_or_default();
        if let Some(&t) = snapshots.iter().find(|&&t| !(t >= 0.0 && t <= t_end)) {
            return Err(CliError::Config(format!("snapshot time {t} is outside [0, {t_end}]")));
        }
        snapshots.sort_by(f64::total_cmp);
        snapshots.dedup();

        Ok(ExperimentConfig {
            problems,
            t_end,
            grid,
            cfl,
            out: self.out.unwrap_or_else(|| PathBuf::from(".")),
            format: self.format.unwrap_or(Format::Csv),
            samples,
            snapshots,
        })
    }
}

fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing required setting '{key}'"))
}

/// A validated run: one Riemann problem per requested gamma.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problems: Vec<RiemannData>,
    pub t_end: f64,
    pub grid: Grid,
    pub cfl: f64,
    pub out: PathBuf,
    pub format: Format,
    /// Points in the self-similar profile written by `solve`.
    pub samples: usize,
    /// Extra output times for `simulate`; the final time is always written.
    pub snapshots: Vec<f64>,
}

impl ExperimentConfig {
    pub fn model(&self) -> Model {
        self.problems[0].model
    }

    pub fn gammas(&self) -> Vec<f64> {
        self.problems.iter().map(|d| d.gamma).collect()
    }
}

/// Parses the `key = value` format. Blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Result<PartialConfig, CliError> {
    let mut cfg = PartialConfig::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Config(format!("line {}: {msg}", n + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "model" => cfg.model = Some(value.parse().map_err(err)?),
            "gamma" => cfg.gammas = Some(vec![parse_f64(value).map_err(err)?]),
            "gammas" => cfg.gammas = Some(parse_list(value).map_err(err)?),
            "left" => cfg.left = Some(parse_pair(value).map_err(err)?),
            "right" => cfg.right = Some(parse_pair(value).map_err(err)?),
            "t_end" => cfg.t_end = Some(parse_f64(value).map_err(err)?),
            "cells" => cfg.cells = Some(parse_usize(value).map_err(err)?),
            "cfl" => cfg.cfl = Some(parse_f64(value).map_err(err)?),
            "domain" => cfg.domain = Some(parse_pair(value).map_err(err)?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "format" => cfg.format = Some(value.parse().map_err(err)?),
            "samples" => cfg.samples = Some(parse_usize(value).map_err(err)?),
            "snapshots" => cfg.snapshots = Some(parse_list(value).map_err(err)?),
            other => return Err(err(format!("unknown key '{other}'"))),
        }
    }
    Ok(cfg)
}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{}' is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{}' is not finite", s.trim()))
    }
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("'{}' is not a non-negative integer", s.trim()))
}

/// Comma- or whitespace-separated numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(parse_f64).collect()
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match parse_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        v => Err(format!("expected two numbers, got {}", v.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ar_file() -> PartialConfig {
        parse_kv("# comment\nmodel = ar\ngammas = 0.6, 0.3\nleft = 3.5 6\nright = 2, 4\n\ncells = 200 # inline\n")
            .unwrap()
    }

    #[test]
    fn parses_every_key() {
        let c = parse_kv(
            "model=par\ngamma=1.4\nleft=3 4\nright=2.5 2\nt_end=0.2\ncells=100\ncfl=0.3\n\
             domain=-2 2\nout=/tmp/x\nformat=json\nsamples=11\nsnapshots=0.1,0.05\n",
        )
        .unwrap();
        assert_eq!(c.model, Some(Model::Par));
        assert_eq!(c.gammas, Some(vec![1.4]));
        assert_eq!(c.domain, Some((-2.0, 2.0)));
        assert_eq!(c.format, Some(Format::Json));
        let r = c.resolve().unwrap();
        assert_eq!(r.snapshots, vec![0.05, 0.1]);
        assert_eq!(r.grid.n_cells, 100);
    }

    #[test]
    fn defaults_fill_in() {
        let r = ar_file().resolve().unwrap();
        assert_eq!(r.gammas(), vec![0.6, 0.3]);
        assert_eq!(r.t_end, DEFAULT_T_END);
        assert_eq!(r.cfl, DEFAULT_CFL);
        assert_eq!(r.grid.n_cells, 200);
        assert_eq!((r.grid.x_min, r.grid.x_max), DEFAULT_DOMAIN);
        assert_eq!(r.format, Format::Csv);
    }

    #[test]
    fn flags_override_file() {
        let flags = PartialConfig { gammas: Some(vec![0.1]), cells: Some(50), ..Default::default() };
        let r = ar_file().overlay(flags).resolve().unwrap();
        assert_eq!(r.gammas(), vec![0.1]);
        assert_eq!(r.grid.n_cells, 50);
        assert_eq!(r.problems[0].left, PrimState::new(3.5, 6.0));
    }

    #[test]
    fn pgd_needs_no_gamma() {
        let c = parse_kv("model = pgd\nleft = 1 0\nright = 1 1").unwrap();
        assert_eq!(c.resolve().unwrap().problems.len(), 1);
    }

    #[test]
    fn domain_violations_are_rejected() {
        let bad = [
            "model = ar\ngamma = 1.5\nleft = 1 1\nright = 1 1",
            "model = par\ngamma = 1.4\nleft = 0 1\nright = 1 1",
            "model = ar\ngamma = 0.5\nleft = 1 1\nright = 1 1\ncells = 4",
            "model = ar\ngamma = 0.5\nleft = 1 1\nright = 1 1\ncfl = 1.5",
            "model = ar\ngamma = 0.5\nleft = 1 1\nright = 1 1\nt_end = -1",
            "model = ar\ngamma = 0.5\nleft = 1 1\nright = 1 1\nsnapshots = 0.9",
            "model = ar\ngamma = 0.5\nleft = 1 1",
            "model = ar\nleft = 1 1\nright = 1 1",
        ];
        for text in bad {
            let r = parse_kv(text).and_then(PartialConfig::resolve);
            assert!(matches!(r, Err(CliError::Config(_))), "{text}: {r:?}");
        }
    }

    #[test]
    fn syntax_errors_name_the_line() {
        for (text, line) in
            [("model = ar\nbogus", 2), ("model = xx", 1), ("left = 1", 1), ("foo = 1", 1), ("gamma = nan", 1)]
        {
            match parse_kv(text) {
                Err(CliError::Config(msg)) => assert!(msg.starts_with(&format!("line {line}:")), "{msg}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn lists_accept_commas_and_spaces() {
        assert_eq!(parse_list("1, 2 3,,4").unwrap(), vec![1.0, 2.0, 3.0, 4.0]);
        assert!(parse_list("1, x").is_err());
    }
}

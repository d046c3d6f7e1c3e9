//! Command-line driver for the deltashock solvers: exact solves, limit
//! tables, simulations and the bundled reference experiments.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use serde::Serialize;
use thiserror::Error;

pub use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] deltashock::Error),
    #[error("numerical blowup at t = {time}")]
    Blowup { time: f64 },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Parse(_) => 2,
            CliError::Solver(deltashock::Error::UnstableBlowup { .. }) | CliError::Blowup { .. } => 4,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Parse(_) => "parse",
            CliError::Solver(_) => "solver",
            CliError::Blowup { .. } => "blowup",
            CliError::Io(_) => "io",
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            error: &'a str,
            message: String,
            exit_code: i32,
            #[serde(skip_serializing_if = "Option::is_none")]
            detail: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            time: Option<f64>,
        }
        let time = match self {
            CliError::Blowup { time } | CliError::Solver(deltashock::Error::UnstableBlowup { time }) => Some(*time),
            _ => None,
        };
        let detail = match self {
            CliError::Solver(e) => Some(format!("{e:?}")),
            _ => None,
        };
        let doc = Doc { error: self.kind(), message: self.to_string(), exit_code: self.exit_code(), detail, time };
        serde_json::to_string(&doc).expect("error document serializes")
    }
}

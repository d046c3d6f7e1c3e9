//! Numeric tables and JSON documents on disk.
//!
//! Floats are written in shortest round-trip form, so reading a table back
//! gives the same bits.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), CliError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|&v| fmt_f64(v))).map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self, CliError> {
        let mut rdr = csv::Reader::from_reader(r);
        let columns: Vec<String> = rdr.headers().map_err(csv_err)?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_err)?;
            let row = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| CliError::Parse(format!("'{s}' is not a number"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != columns.len() {
                return Err(CliError::Parse(format!("row has {} fields, header has {}", row.len(), columns.len())));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    /// Writes `<stem>.csv` or `<stem>.json` and returns the path.
    pub fn save(&self, dir: &Path, stem: &str, format: Format) -> Result<PathBuf, CliError> {
        match format {
            Format::Csv => {
                let path = dir.join(format!("{stem}.csv"));
                self.write_csv(fs::File::create(&path)?)?;
                Ok(path)
            }
            Format::Json => {
                let path = dir.join(format!("{stem}.json"));
                save_json(&path, &JsonTable::from(self))?;
                Ok(path)
            }
        }
    }
}

/// JSON has no inf or NaN, so those cells become strings.
#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [String],
    rows: Vec<Vec<serde_json::Value>>,
}

impl<'a> From<&'a Table> for JsonTable<'a> {
    fn from(t: &'a Table) -> Self {
        let cell = |v: f64| match serde_json::Number::from_f64(v) {
            Some(n) => serde_json::Value::Number(n),
            None => serde_json::Value::String(fmt_f64(v)),
        };
        Self { columns: &t.columns, rows: t.rows.iter().map(|r| r.iter().map(|&v| cell(v)).collect()).collect() }
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Parse(e.to_string())
}

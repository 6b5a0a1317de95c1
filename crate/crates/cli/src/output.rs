use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const VERSION: &str = concat!("wonderful ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// What every command prints under `--format json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Value,
    pub version: String,
}

/// A finished command: the JSON document plus its table and CSV renderings.
pub struct Report {
    pub doc: OutputDocument,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    /// Set by `verify` when some check failed.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str, params: Value, result: impl Serialize) -> Result<Self> {
        let params = match params {
            Value::Object(m) => m,
            other => anyhow::bail!("params must be an object, got {other}"),
        };
        Ok(Report {
            doc: OutputDocument {
                command: command.to_string(),
                params,
                result: serde_json::to_value(result)?,
                version: VERSION.to_string(),
            },
            text: String::new(),
            csv_header: vec![],
            csv_rows: vec![],
            failed: false,
        })
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = text;
        self
    }

    pub fn csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header;
        self.csv_rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Table => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.doc)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(vec![]);
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

/// Left-aligned label column followed by a value, one per line.
pub fn rows_text(title: &str, rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = format!("{title}\n");
    for (label, value) in rows {
        let _ = writeln!(out, "  {label:<width$}  {value}");
    }
    out
}

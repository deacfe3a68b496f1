//! Numeric tables and their CSV / JSON encodings.
//!
//! CSV cells are written with 17 significant digits (`{:.16e}`), `.` as the
//! decimal point and `\n` line endings, so identical tables give identical
//! bytes. Non-finite cells are written as `inf`, `-inf` and `NaN` in both
//! formats.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn format_cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn parse_cell(s: &str) -> Result<f64> {
    f64::from_str(s.trim()).map_err(|_| CliError::validation(format!("not a number: {s:?}")))
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|x| format_cell(*x)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<Value>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| if x.is_finite() { json!(x) } else { json!(x.to_string()) })
                    .collect()
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "columns": self.columns, "rows": rows }))
            .expect("serializable table");
        s.push('\n');
        s
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        let table = match format {
            Format::Csv => Self::from_csv(text)?,
            Format::Json => Self::from_json(text)?,
        };
        for (i, row) in table.rows.iter().enumerate() {
            if row.len() != table.columns.len() {
                return Err(CliError::validation(format!(
                    "row {i} has {} cells, header has {}",
                    row.len(),
                    table.columns.len()
                )));
            }
        }
        Ok(table)
    }

    /// Parses and checks that the header equals `schema`.
    pub fn parse_with_schema(text: &str, format: Format, schema: &[&str]) -> Result<Self> {
        let table = Self::parse(text, format)?;
        if table.columns != schema {
            return Err(CliError::validation(format!(
                "header {:?} does not match schema {schema:?}",
                table.columns
            )));
        }
        Ok(table)
    }

    fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().flexible(true).from_reader(text.as_bytes());
        let bad = |e: csv::Error| CliError::validation(format!("malformed csv: {e}"));
        let columns = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in r.records() {
            rows.push(
                record
                    .map_err(bad)?
                    .iter()
                    .map(parse_cell)
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Self { columns, rows })
    }

    fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            columns: Vec<String>,
            rows: Vec<Vec<Value>>,
        }
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| CliError::validation(format!("malformed json table: {e}")))?;
        let cell = |v: &Value| match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| CliError::validation(format!("bad number {n}"))),
            Value::String(s) => parse_cell(s),
            other => Err(CliError::validation(format!("bad cell {other}"))),
        };
        let rows = raw
            .rows
            .iter()
            .map(|r| r.iter().map(cell).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            columns: raw.columns,
            rows,
        })
    }
}

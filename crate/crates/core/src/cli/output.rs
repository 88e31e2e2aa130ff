//! Tabular output as CSV (8-decimal numbers, `NA` for missing values) or JSON
//! with explicit units.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::config::OutputFormat;

pub const UNITS: &str = "fm^-1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Missing,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }

    pub fn csv_text(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_num(*v),
            Cell::Num(_) | Cell::Missing => "NA".into(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // round-trip through the CSV text so both formats carry the same digits
            Cell::Num(v) if v.is_finite() => format_num(*v).parse::<f64>().map(Value::from).unwrap_or(Value::Null),
            Cell::Num(_) | Cell::Missing => Value::Null,
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.clone()),
        }
    }
}

/// Eight decimals, with negative zero printed as zero.
pub fn format_num(v: f64) -> String {
    let s = format!("{v:.8}");
    if s == "-0.00000000" {
        "0.00000000".into()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra key/value pairs copied into the JSON header.
    pub metadata: Vec<(String, Value)>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: Value) -> Self {
        self.metadata.push((key.to_string(), value));
        self
    }

    pub fn to_csv(&self) -> std::io::Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("units".into(), json!(UNITS));
        for (k, v) in &self.metadata {
            obj.insert(k.clone(), v.clone());
        }
        obj.insert("columns".into(), json!(self.columns));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        obj.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json serialization");
        s.push('\n');
        s
    }

    /// Writes `<dir>/<stem>.<ext>` and returns the path.
    pub fn write(&self, dir: &Path, stem: &str, format: OutputFormat) -> std::io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{stem}.{}", format.extension()));
        let body = match format {
            OutputFormat::Csv => self.to_csv()?,
            OutputFormat::Json => self.to_json(),
        };
        fs::write(&path, body)?;
        Ok(path)
    }
}

/// File-name friendly state label, e.g. `0p3_2`.
pub fn file_label(label: &str) -> String {
    label.replace('/', "_")
}

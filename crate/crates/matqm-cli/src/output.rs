//! Deterministic serialization: fixed float formatting, fixed column order,
//! LF line endings. Identical inputs must yield byte-identical outputs.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

/// 17 significant digits, scientific notation; negative zero normalized.
pub fn fmt_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// One CSV cell; floats go through [`fmt_float`], everything else is written
/// verbatim.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// Empty CSV field, `null` in JSON.
    Empty(Option<()>),
}

impl Cell {
    pub fn empty() -> Self {
        Cell::Empty(None)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => fmt_float(*v),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty(_) => String::new(),
        }
    }
}

/// A rectangular table with named columns, rendered as CSV or embedded in a
/// JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes to `--out` or stdout.
pub fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

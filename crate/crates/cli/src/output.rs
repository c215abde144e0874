use std::io::Write;
use std::path::{Path, PathBuf};

use seqlab::report::{format_sig12, render_report, round_sig12, Status};
use seqlab::{ReportFormat, VerificationReport};
use serde_json::{Map, Value};

use crate::CliError;

/// A plain data table (one row per instance) for plot input.
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_sig12(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) if v.is_finite() => Value::from(round_sig12(*v)),
            Cell::Float(_) => Value::Null,
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render(&self, format: ReportFormat) -> Result<String, CliError> {
        match format {
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::Output(e.to_string());
                w.write_record(&self.columns).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
            }
            ReportFormat::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Output(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
        }
    }

    /// Writes to `out` (format from the extension) or CSV to stdout.
    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        match out {
            Some(path) => write_file(path, &self.render(ReportFormat::from_path(path)?)?),
            None => write_stdout(&self.render(ReportFormat::Csv)?),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn write_stdout(text: &str) -> Result<(), CliError> {
    std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))
}

pub fn emit_records(records: &[VerificationReport], out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, &render_report(records, ReportFormat::from_path(path)?)?),
        None => write_stdout(&render_report(records, ReportFormat::Csv)?),
    }
}

/// Prints a status summary and the offending records to stderr.
pub fn summarize(records: &[VerificationReport]) {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} records: {} pass, {} fail, {} nonconverged, {} skipped",
        records.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Nonconverged),
        count(Status::Skipped)
    );
    for r in records.iter().filter(|r| matches!(r.status, Status::Fail | Status::Nonconverged)) {
        eprintln!(
            "  {:?}: {} N={} predicted={} empirical={} rel_gap={:.3e} tol={:.1e}",
            r.status, r.instance, r.dim, r.predicted, r.empirical, r.rel_gap, r.tolerance
        );
    }
    for r in records.iter().filter(|r| r.status == Status::Skipped) {
        eprintln!("  skipped: {} N={}: {}", r.instance, r.dim, r.note.as_deref().unwrap_or(""));
    }
}

//! Verification records and their CSV/JSON serialization.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Outcome of one predicted-vs-empirical comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The optimizer behind the empirical value did not converge.
    Nonconverged,
    /// No prediction or computation for this instance; see `note`.
    Skipped,
}

/// One comparison between a closed-form prediction and an optimized value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub case: String,
    #[serde(rename = "N")]
    pub dim: usize,
    #[serde(serialize_with = "sig12")]
    pub predicted: f64,
    #[serde(serialize_with = "sig12")]
    pub empirical: f64,
    /// `empirical - predicted`.
    #[serde(serialize_with = "sig12")]
    pub gap: f64,
    /// `|gap| / |predicted|`.
    #[serde(serialize_with = "sig12")]
    pub rel_gap: f64,
    #[serde(serialize_with = "sig12")]
    pub tolerance: f64,
    pub converged: bool,
    pub seeds: Vec<u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    /// Builds a record and classifies it: non-convergence wins over the
    /// tolerance check.
    #[allow(clippy::too_many_arguments)]
    pub fn compare(
        instance: impl Into<String>,
        case: impl Into<String>,
        dim: usize,
        predicted: f64,
        empirical: f64,
        tolerance: f64,
        converged: bool,
        seeds: Vec<u64>,
    ) -> Self {
        let gap = empirical - predicted;
        let rel_gap = if predicted != 0.0 { gap.abs() / predicted.abs() } else { gap.abs() };
        let status = if !converged {
            Status::Nonconverged
        } else if rel_gap <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            instance: instance.into(),
            case: case.into(),
            dim,
            predicted,
            empirical,
            gap,
            rel_gap,
            tolerance,
            converged,
            seeds,
            status,
            note: None,
        }
    }

    pub fn skipped(instance: impl Into<String>, case: impl Into<String>, dim: usize, reason: impl Into<String>) -> Self {
        VerificationReport {
            instance: instance.into(),
            case: case.into(),
            dim,
            predicted: f64::NAN,
            empirical: f64::NAN,
            gap: f64::NAN,
            rel_gap: f64::NAN,
            tolerance: f64::NAN,
            converged: true,
            seeds: Vec::new(),
            status: Status::Skipped,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

fn sig12<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(round_sig12(*v))
    } else {
        s.serialize_none()
    }
}

/// Text form of `round_sig12(v)`: positional in `[1e-4, 1e15)`, exponent
/// notation outside, empty for non-finite values.
pub fn format_sig12(v: f64) -> String {
    if !v.is_finite() {
        return String::new();
    }
    let r = round_sig12(v);
    let a = r.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        r.to_string()
    } else {
        format!("{r:e}")
    }
}

fn csv_float(v: f64) -> String {
    format_sig12(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// Format implied by a file extension (`.csv` or `.json`).
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) => e.parse(),
            None => Err(invalid("format", format!("cannot infer report format from {}", path.display()))),
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(invalid("format", format!("unknown report format `{other}` (csv|json)"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

pub const CSV_HEADER: [&str; 7] = ["instance", "case", "N", "predicted", "empirical", "rel_gap", "converged"];

/// Serializes records in input order. Empty input is an error.
pub fn render_report(records: &[VerificationReport], format: ReportFormat) -> Result<String> {
    if records.is_empty() {
        return Err(invalid("records", "refusing to write an empty report"));
    }
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(records).map_err(|e| Error::Serialize(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let ser = |e: csv::Error| Error::Serialize(e.to_string());
            w.write_record(CSV_HEADER).map_err(ser)?;
            for r in records {
                w.write_record([
                    r.instance.clone(),
                    r.case.clone(),
                    r.dim.to_string(),
                    csv_float(r.predicted),
                    csv_float(r.empirical),
                    csv_float(r.rel_gap),
                    r.converged.to_string(),
                ])
                .map_err(ser)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Serialize(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Serialize(e.to_string()))
        }
    }
}

/// Writes records to `path`; nothing is written when `records` is empty.
pub fn emit_report(records: &[VerificationReport], format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = render_report(records, format)?;
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

//! Experiment reports and their CSV/JSON encodings.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Result;
use serde::{Deserialize, Serialize};

/// One grid point of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    /// Column label, e.g. `k1`, `s2`, `graded`.
    pub column: String,
    pub alpha: f64,
    pub error: f64,
    pub function_evals: usize,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub alpha: Option<f64>,
    pub function: String,
    pub git_rev: String,
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` overrides the clock.
    pub timestamp: u64,
}

impl Metadata {
    pub fn new(function: impl Into<String>, alpha: Option<f64>) -> Self {
        Self {
            alpha,
            function: function.into(),
            git_rev: env!("LOGCHEB_GIT_REV").to_string(),
            timestamp: timestamp(),
        }
    }
}

fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        return t;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub experiment: String,
    pub metadata: Metadata,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl ErrorReport {
    /// Builds a report; rows are stably sorted by `n`.
    pub fn new(
        experiment: impl Into<String>,
        metadata: Metadata,
        mut rows: Vec<ReportRow>,
    ) -> Self {
        rows.sort_by_key(|r| r.n);
        Self {
            experiment: experiment.into(),
            metadata,
            rows,
        }
    }

    /// First row matching `(n, column)`.
    pub fn find(&self, n: usize, column: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.n == n && r.column == column)
    }

    pub fn write(&self, format: Format, out: impl Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "experiment",
            "function",
            "n",
            "n1",
            "n2",
            "column",
            "alpha",
            "error",
            "function_evals",
            "elapsed",
        ])?;
        for r in &self.rows {
            w.write_record([
                self.experiment.clone(),
                self.metadata.function.clone(),
                r.n.to_string(),
                r.n1.to_string(),
                r.n2.to_string(),
                r.column.clone(),
                r.alpha.to_string(),
                format!("{:.6e}", r.error),
                r.function_evals.to_string(),
                format!("{:.6e}", r.elapsed),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, column: &str) -> ReportRow {
        ReportRow {
            n,
            n1: n - 1,
            n2: 1,
            column: column.into(),
            alpha: -1.0,
            error: 1e-3,
            function_evals: n,
            elapsed: 0.0,
        }
    }

    #[test]
    fn rows_sorted_stably() {
        let r = ErrorReport::new(
            "t",
            Metadata::new("k1", Some(-1.0)),
            vec![row(8, "a"), row(4, "b"), row(8, "c"), row(4, "d")],
        );
        let order: Vec<_> = r.rows.iter().map(|r| (r.n, r.column.as_str())).collect();
        assert_eq!(order, [(4, "b"), (4, "d"), (8, "a"), (8, "c")]);
        assert_eq!(r.find(8, "c").unwrap().n, 8);
    }

    #[test]
    fn csv_shape() {
        let r = ErrorReport::new("t", Metadata::new("k1", None), vec![row(4, "k1")]);
        let mut buf = Vec::new();
        r.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "t,k1,4,3,1,k1,-1,1.000000e-3,4,0.000000e0");
    }

    #[test]
    fn json_round_trip() {
        let r = ErrorReport::new("t", Metadata::new("k1", Some(0.25)), vec![row(4, "k1")]);
        let mut buf = Vec::new();
        r.write(Format::Json, &mut buf).unwrap();
        let back: ErrorReport = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, r);
    }
}

//! Reproduction suites against the bundled reference tables, and report
//! emission as JSON, CSV or text.

mod data;
mod suites;

use std::fmt::{self, Display, Write as _};
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};

pub use data::{evaluate_row, reference, FiberCase, IntervalRow, PolytopeEntry, Reference, VertexRow};
pub use suites::{class_count_extremes, run_suite};

pub const SCHEMA: &str = "alcove-kit/1";

/// Suite names accepted by [`run_suite`], in the order `verify` runs them.
pub const SUITES: [&str; 8] = [
    "interval-counts",
    "face-vectors",
    "vertex-tables",
    "simplest-type-ii",
    "double-zero-vertex",
    "edge-directions",
    "singular-fibers",
    "dynamics",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Skipped,
}

impl Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<String>,
    pub expected: String,
    pub actual: String,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Case {
    /// Passes iff the two values print identically.
    pub fn compare(id: impl Into<String>, expected: impl Display, actual: impl Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        Self::check(id, expected, actual, ok)
    }

    pub fn check(id: impl Into<String>, expected: impl Display, actual: impl Display, ok: bool) -> Self {
        Self {
            id: id.into(),
            n: None,
            interval: None,
            expected: expected.to_string(),
            actual: actual.to_string(),
            status: if ok { CaseStatus::Pass } else { CaseStatus::Fail },
            source: None,
        }
    }

    pub fn skipped(id: impl Into<String>, expected: impl Display, why: impl Display) -> Self {
        Self { status: CaseStatus::Skipped, ..Self::check(id, expected, why, false) }
    }

    /// A failed case carrying the error that prevented the check.
    pub fn error(id: impl Into<String>, expected: impl Display, err: &Error) -> Self {
        Self::check(id, expected, format!("error: {err}"), false)
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_interval(mut self, interval: impl Into<String>) -> Self {
        self.interval = Some(interval.into());
        self
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}

/// Outcome of one suite. `elapsed` is kept out of the serialized form so that
/// repeated runs emit identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite_name: String,
    pub seed: u64,
    pub cases: Vec<Case>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn new(suite_name: impl Into<String>, seed: u64) -> Self {
        Self { schema: SCHEMA, suite_name: suite_name.into(), seed, cases: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != CaseStatus::Fail)
    }

    pub fn count(&self, status: CaseStatus) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides each suite's own residual threshold.
    pub tol: Option<f64>,
    /// Enables the long enumerations (`n ≥ 13`).
    pub stretch: bool,
    /// Restricts per-`n` suites to one `n`.
    pub n: Option<usize>,
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 0, tol: None, stretch: false, n: None, samples: 100 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format `{s}` (json, csv or text)"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    id: &'a str,
    n: Option<usize>,
    interval: Option<&'a str>,
    expected: &'a str,
    actual: &'a str,
    status: CaseStatus,
    source: Option<&'a str>,
}

/// Renders a report. JSON is pretty-printed with a fixed field order, CSV
/// has one row per case under a fixed header.
pub fn emit(report: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(["suite", "id", "n", "interval", "expected", "actual", "status", "source"])
                .expect("in-memory write");
            for c in &report.cases {
                w.serialize(CsvRow {
                    suite: &report.suite_name,
                    id: &c.id,
                    n: c.n,
                    interval: c.interval.as_deref(),
                    expected: &c.expected,
                    actual: &c.actual,
                    status: c.status,
                    source: c.source.as_deref(),
                })
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{}: {} ({} passed, {} failed, {} skipped; seed {})",
                report.suite_name,
                if report.passed() { "PASS" } else { "FAIL" },
                report.count(CaseStatus::Pass),
                report.count(CaseStatus::Fail),
                report.count(CaseStatus::Skipped),
                report.seed
            );
            for c in &report.cases {
                let mut at = String::new();
                if let Some(n) = c.n {
                    let _ = write!(at, "n={n} ");
                }
                if let Some(iv) = &c.interval {
                    let _ = write!(at, "{iv} ");
                }
                let _ = writeln!(s, "  {:<7} {at}{}: expected {}, got {}", c.status, c.id, c.expected, c.actual);
            }
            s
        }
    }
}

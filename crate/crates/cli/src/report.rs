//! Versioned run report: per-check records plus derived tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use acphase::check::CheckReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "acphase.run-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub group: String,
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Record {
    pub fn new(group: &str, name: impl Into<String>, status: Status) -> Self {
        Self { group: group.into(), name: name.into(), status, measured: None, expected: None, tolerance: None, detail: String::new() }
    }

    /// Non-finite values are dropped so that the JSON form round-trips.
    pub fn measured(mut self, measured: f64, expected: f64, tolerance: f64) -> Self {
        self.measured = measured.is_finite().then_some(measured);
        self.expected = expected.is_finite().then_some(expected);
        self.tolerance = tolerance.is_finite().then_some(tolerance);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub suite: String,
    pub status: Status,
    pub summary: Summary,
    pub parameters: BTreeMap<String, String>,
    pub records: Vec<Record>,
    #[serde(default)]
    pub tables: Vec<Table>,
}

impl RunReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION.into(),
            suite: suite.into(),
            status: Status::Pass,
            summary: Summary::default(),
            parameters: BTreeMap::new(),
            records: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
        self.refresh();
    }

    pub fn push_checks(&mut self, group: &str, checks: &CheckReport) {
        for c in &checks.checks {
            self.records.push(Record::new(group, &c.name, Status::from_bool(c.passed)).detail(&c.detail));
        }
        self.refresh();
    }

    fn refresh(&mut self) {
        let count = |s| self.records.iter().filter(|r| r.status == s).count();
        self.summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) };
        self.status = if self.summary.fail > 0 { Status::Fail } else { Status::Pass };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Header, one line per record, then the tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}] {}", self.suite, self.schema, if self.passed() { "PASS" } else { "FAIL" });
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let num = |v: Option<f64>| v.map(|x| format!("{x:.9e}")).unwrap_or_else(|| "-".into());
        for r in &self.records {
            let _ = writeln!(
                out,
                "{:<4}  {:<10}  {:<60}  measured={}  expected={}  tol={}  {}",
                r.status.label(),
                r.group,
                r.name,
                num(r.measured),
                num(r.expected),
                num(r.tolerance),
                r.detail
            );
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n== {} ==", t.name);
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.columns[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ");
            let _ = writeln!(out, "{}", line(&t.columns).trim_end());
            for row in &t.rows {
                let _ = writeln!(out, "{}", line(row).trim_end());
            }
        }
        let _ = writeln!(out, "\n{} pass, {} fail, {} skipped", self.summary.pass, self.summary.fail, self.summary.skipped);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_records() {
        let mut r = RunReport::new("t");
        r.push(Record::new("g", "a", Status::Pass));
        r.push(Record::new("g", "b", Status::Skipped));
        assert!(r.passed());
        r.push(Record::new("g", "c", Status::Fail));
        assert!(!r.passed());
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skipped: 1 });
    }

    #[test]
    fn non_finite_values_are_dropped() {
        let r = Record::new("g", "a", Status::Fail).measured(f64::NAN, 2.0, 0.2);
        assert_eq!(r.measured, None);
        assert_eq!(r.expected, Some(2.0));
    }

    #[test]
    fn json_roundtrip() {
        let mut r = RunReport::new("t");
        r.param("seed", 3);
        r.push(Record::new("g", "a", Status::Pass).measured(1.0 / 3.0, 0.3333333333, 1e-6).detail("x"));
        r.tables.push(Table { name: "t".into(), columns: vec!["a".into()], rows: vec![vec!["1".into()]] });
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
    }
}

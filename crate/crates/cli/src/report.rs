//! Reports and their three renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// One command's result. Nothing here depends on the worker count or on
/// wall-clock time, so equal configs give equal bytes.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub versions: BTreeMap<&'static str, &'static str>,
    pub command: String,
    /// Which mathematical statement the run checks.
    pub statement: &'static str,
    pub config: Value,
    pub passed: bool,
    pub failures: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

pub fn versions() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("bv-graph-complex", bv_graph_complex::VERSION),
        ("chordwork", env!("CARGO_PKG_VERSION")),
        ("exact-linalg", exact_linalg::VERSION),
        ("hochschild-complex", hochschild_complex::VERSION),
        ("lie-engines", lie_engines::VERSION),
        ("moduli-cohomology", moduli_cohomology::VERSION),
        ("period-integrals", period_integrals::VERSION),
        ("polygon-combinatorics", polygon_combinatorics::VERSION),
    ])
}

impl Report {
    pub fn new(command: &str, statement: &'static str, config: Value, columns: &[&str]) -> Self {
        Report {
            tool: "chordwork",
            versions: versions(),
            command: command.to_string(),
            statement,
            config,
            passed: true,
            failures: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let r: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(r.len(), self.columns.len());
        self.rows.push(r);
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        self.failures.push(msg.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serialises");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory csv");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (k, c) in r.iter().enumerate() {
                width[k] = width[k].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells.iter().enumerate().map(|(k, c)| format!("{c:<w$}", w = width[k])).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        let _ = writeln!(out, "# {}: {}", self.command, self.statement);
        let _ = writeln!(out, "{}", line(&self.columns));
        let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
        let _ = writeln!(out, "{}", line(&rule));
        for r in &self.rows {
            let _ = writeln!(out, "{}", line(r));
        }
        for f in &self.failures {
            let _ = writeln!(out, "FAIL {f}");
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

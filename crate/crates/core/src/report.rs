//! Per-equation residual records and run reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::forms::LieForm;
use crate::matrix::PolyMatrix;
use crate::poly::{default_vars, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "EXACT_ZERO")]
    ExactZero,
    #[serde(rename = "NONZERO")]
    Nonzero,
}

/// Anything whose vanishing is being checked.
pub trait Residual {
    /// `None` when identically zero, otherwise a rendering of the first
    /// nonzero term.
    fn leading_residual(&self) -> Option<String>;
}

impl Residual for LieForm {
    fn leading_residual(&self) -> Option<String> {
        self.leading()
    }
}

impl Residual for PolyMatrix {
    fn leading_residual(&self) -> Option<String> {
        self.first_nonzero().map(|(i, j, p)| {
            let (m, c) = p.leading_term().expect("nonzero entry");
            let t = Poly::term(p.dim(), m.clone(), c.clone());
            format!("[{},{}]: {}", i + 1, j + 1, t.to_string_with(&default_vars(p.dim())))
        })
    }
}

impl Residual for Poly {
    fn leading_residual(&self) -> Option<String> {
        self.leading_term().map(|(m, c)| {
            Poly::term(self.dim(), m.clone(), c.clone()).to_string_with(&default_vars(self.dim()))
        })
    }
}

/// Outcome of one equation on one index tuple (or sample index).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub equation: String,
    pub tuple: Vec<usize>,
    pub status: Status,
    pub leading: Option<String>,
}

impl Record {
    pub fn check(equation: &str, tuple: &[usize], residual: &impl Residual) -> Record {
        let leading = residual.leading_residual();
        Record {
            equation: equation.to_string(),
            tuple: tuple.to_vec(),
            status: if leading.is_none() { Status::ExactZero } else { Status::Nonzero },
            leading,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::ExactZero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub verdict: String,
}

/// Deterministic report: records keep insertion order, which every producer
/// fixes (equation order, then tuples in lexicographic order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub params: BTreeMap<String, String>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        let mut r = RunReport {
            command: command.into(),
            seed: None,
            params: BTreeMap::new(),
            records: Vec::new(),
            summary: Summary { total: 0, passed: 0, failed: 0, verdict: String::new() },
        };
        r.refresh();
        r
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
        self.refresh();
    }

    pub fn check(&mut self, equation: &str, tuple: &[usize], residual: &impl Residual) {
        self.push(Record::check(equation, tuple, residual));
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = Record>) {
        self.records.extend(records);
        self.refresh();
    }

    pub fn merge(&mut self, other: RunReport) {
        self.extend(other.records);
    }

    fn refresh(&mut self) {
        let passed = self.records.iter().filter(|r| r.passed()).count();
        let total = self.records.len();
        self.summary = Summary {
            total,
            passed,
            failed: total - passed,
            verdict: if passed == total { "PASS" } else { "FAIL" }.to_string(),
        };
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// Records for one equation.
    pub fn records_for<'a>(&'a self, equation: &'a str) -> impl Iterator<Item = &'a Record> {
        self.records.iter().filter(move |r| r.equation == equation)
    }

    /// Equation ids in first-appearance order.
    pub fn equations(&self) -> Vec<String> {
        let mut seen = Vec::<String>::new();
        for r in &self.records {
            if !seen.contains(&r.equation) {
                seen.push(r.equation.clone());
            }
        }
        seen
    }

    /// Machine-readable form with stable field order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable form: header, failures, per-equation counts, summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for (k, v) in &self.params {
            let _ = writeln!(out, "param {k} = {v}");
        }
        for r in self.failures() {
            let _ = writeln!(
                out,
                "FAIL {} {} leading {}",
                r.equation,
                fmt_index_tuple(&r.tuple),
                r.leading.as_deref().unwrap_or("-")
            );
        }
        for eq in self.equations() {
            let total = self.records_for(&eq).count();
            let ok = self.records_for(&eq).filter(|r| r.passed()).count();
            let verdict = if ok == total { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{verdict} {eq} {ok}/{total}");
        }
        let _ = writeln!(
            out,
            "summary: {} records, {} passed, {} failed: {}",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.verdict
        );
        out
    }
}

/// `(0,1,2)`.
pub fn fmt_index_tuple(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

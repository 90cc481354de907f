//! Verification records and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::scalar::{format_rational, Rational};
use crate::symba::Expr;

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub reference: String,
    /// Canonical rendering of `lhs - rhs`; `"0"` when the identity holds.
    pub residual: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when the residual expression is zero.
    pub fn expr(id: &str, reference: &str, residual: &Expr) -> Self {
        Self {
            id: id.to_string(),
            reference: reference.to_string(),
            residual: residual.to_string(),
            passed: residual.is_zero(),
            note: None,
        }
    }

    /// Passes when every residual is zero; renders the first nonzero one.
    pub fn exprs(id: &str, reference: &str, residuals: &[Expr]) -> Self {
        let bad = residuals.iter().find(|r| !r.is_zero());
        let mut c = Self::expr(id, reference, bad.unwrap_or(&Expr::zero()));
        if residuals.len() > 1 {
            let n = residuals.iter().filter(|r| !r.is_zero()).count();
            c.note = Some(format!("{} of {} residuals nonzero", n, residuals.len()));
        }
        c
    }

    pub fn rational(id: &str, reference: &str, residual: &Rational) -> Self {
        Self {
            id: id.to_string(),
            reference: reference.to_string(),
            residual: format_rational(residual),
            passed: *residual == Rational::from_integer(0.into()),
            note: None,
        }
    }

    /// Aggregate over sampled cases: the residual is the number of failing
    /// samples.
    pub fn sampled(id: &str, reference: &str, failures: usize, samples: usize) -> Self {
        Self {
            id: id.to_string(),
            reference: reference.to_string(),
            residual: failures.to_string(),
            passed: failures == 0,
            note: Some(format!("{samples} samples")),
        }
    }

    pub fn failed(id: &str, reference: &str, message: &str) -> Self {
        Self {
            id: id.to_string(),
            reference: reference.to_string(),
            residual: "error".into(),
            passed: false,
            note: Some(message.to_string()),
        }
    }

    /// A yes/no property with a short description of what was inspected.
    pub fn predicate(id: &str, reference: &str, holds: bool, detail: &str) -> Self {
        Self {
            id: id.to_string(),
            reference: reference.to_string(),
            residual: if holds { "0".into() } else { detail.to_string() },
            passed: holds,
            note: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note.to_string(),
        });
        self
    }
}

/// Result of a verification suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Wall time of the suite, only filled in on request since it breaks
    /// reproducible output.
    pub elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
struct Record<'a> {
    suite: &'a str,
    #[serde(flatten)]
    check: &'a Check,
}

impl Report {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        Self { suite: suite.to_string(), checks, elapsed_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}  {:<10} {:<10} {}  residual={}", self.suite, c.reference, c.id, c.residual);
            if let Some(n) = &c.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
        }
        let _ = write!(out, "{}: {} checks, {} failed", self.suite, self.checks.len(), self.failures());
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, " [{ms} ms]");
        }
        out.push('\n');
        out
    }
}

/// All reports as one text document.
pub fn render_text(reports: &[Report]) -> String {
    let mut out: String = reports.iter().map(Report::render_text).collect();
    if reports.len() > 1 {
        let total: usize = reports.iter().map(|r| r.checks.len()).sum();
        let failed: usize = reports.iter().map(Report::failures).sum();
        let _ = writeln!(out, "total: {total} checks, {failed} failed");
    }
    out
}

/// All checks of all reports as one JSON array of identity records.
pub fn render_json(reports: &[Report]) -> String {
    let records: Vec<Record> =
        reports.iter().flat_map(|r| r.checks.iter().map(move |c| Record { suite: &r.suite, check: c })).collect();
    let mut out = serde_json::to_string_pretty(&records).expect("records serialize");
    out.push('\n');
    out
}

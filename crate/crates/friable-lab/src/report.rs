//! Report emission: JSON with a reproducibility config echo, CSV rows, and
//! plain text.
//!
//! Exact values are serialized as decimal strings (they exceed native JSON
//! number precision); floats are plain JSON numbers under keys that mark
//! them as approximations.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::suites::SuiteReport;

/// Everything needed to reproduce a run: command, flags, grid, tolerances.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub flags: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            flags: Vec::new(),
        }
    }

    pub fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.push((key.to_string(), value.to_string()));
        self
    }
}

/// Fixed-width float formatting for CSV: 17 significant digits.
pub fn csv_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.16e}")
}

pub fn suite_reports_json(config: &RunConfig, reports: &[SuiteReport]) -> Value {
    json!({
        "config": config,
        "passed": reports.iter().all(|r| r.passed),
        "reports": reports,
    })
}

pub fn suite_reports_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "[{status}] {:<16} points={:<6} empirical={}",
            r.suite_id,
            r.points,
            r.empirical_constant
                .map_or("-".to_string(), |c| format!("{c:.6}")),
        );
        if let Some(w) = &r.worst_case {
            let _ = writeln!(
                out,
                "       worst: q={} n={} m={} residual={:.6e}",
                w.q.map_or("-".to_string(), |q| q.to_string()),
                w.n,
                w.m.map_or("-".to_string(), |m| m.to_string()),
                w.residual
            );
        }
        for note in &r.notes {
            let _ = writeln!(out, "       {note}");
        }
    }
    out
}

pub fn suite_reports_csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from(
        "suite,passed,points,empirical_constant,worst_q,worst_n,worst_m,worst_residual\n",
    );
    for r in reports {
        let (wq, wn, wm, wr) = r.worst_case.as_ref().map_or(
            (String::new(), String::new(), String::new(), String::new()),
            |w| {
                (
                    w.q.map_or(String::new(), |q| q.to_string()),
                    w.n.to_string(),
                    w.m.map_or(String::new(), |m| m.to_string()),
                    csv_float(w.residual),
                )
            },
        );
        let _ = writeln!(
            out,
            "{},{},{},{},{wq},{wn},{wm},{wr}",
            r.suite_id,
            r.passed,
            r.points,
            r.empirical_constant.map_or(String::new(), csv_float),
        );
    }
    out
}

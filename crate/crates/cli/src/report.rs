//! Text and machine-readable rendering of engine output.
//!
//! The machine format is JSON with rationals as `"p/q"` strings; a verdict
//! printed in it re-parses into an equal `Verdict` value. Text output is a
//! fixed layout with one certificate entry per line.

use kernelstab_core::{Rat, RatInterval, Verdict};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub fn render_verdict_text(verdict: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", verdict.kind);
    if let Some(rule) = verdict.rule {
        let label = if verdict.kind == kernelstab_core::VerdictKind::Inconclusive {
            "nearest rule"
        } else {
            "rule"
        };
        let _ = writeln!(out, "{label}: {rule}");
    }
    if let Some(window) = &verdict.window {
        let _ = writeln!(out, "window: {window}");
    }
    match (verdict.bound_w1, verdict.bound_w2) {
        (Some(b1), Some(b2)) => {
            let _ = writeln!(out, "instability bounds: w1 <= {b1}, w2 <= {b2}");
        }
        (Some(b1), None) => {
            let _ = writeln!(out, "instability bound: w1 <= {b1}");
        }
        (None, Some(b2)) => {
            let _ = writeln!(out, "instability bound: w2 <= {b2}");
        }
        (None, None) => {}
    }
    let _ = writeln!(out, "inferred facts: {}", fact_list(&verdict.inferred));
    let _ = writeln!(out, "missing facts: {}", fact_list(&verdict.missing));
    let _ = writeln!(out, "certificate:");
    for (index, entry) in verdict.certificate.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:2}. [{} | {}] {}",
            index + 1,
            entry.rule,
            entry.citation,
            entry.statement
        );
        if !entry.checks.is_empty() {
            let checks: Vec<String> = entry.checks.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "      checks: {}", checks.join("; "));
        }
    }
    out
}

fn fact_list(facts: &[kernelstab_core::Fact]) -> String {
    if facts.is_empty() {
        "(none)".to_string()
    } else {
        facts
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Window report of the `window` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub a1: Rat,
    pub b1: Rat,
    pub window: RatInterval,
    /// Mediant of the endpoints, a rational strictly inside the window.
    pub sample: Rat,
}

impl WindowReport {
    pub fn new(window: RatInterval) -> Self {
        let a1 = window.lo().expect("polarization window is never empty");
        let b1 = window.hi().expect("polarization window is never empty");
        WindowReport {
            a1,
            b1,
            window,
            sample: Rat::mediant(a1, b1),
        }
    }
}

pub fn render_window_text(report: &WindowReport) -> String {
    format!(
        "a1 = {}\nb1 = {}\nclosed window: {}\nopen interior: ({}, {})\nsample w1 (mediant): {}\n",
        report.a1, report.b1, report.window, report.a1, report.b1, report.sample
    )
}

/// Agreement report of the `oracle-scan` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleScanReport {
    pub grid: i64,
    pub window: RatInterval,
    pub teixidor_feasible: usize,
    pub teixidor_first: Option<i64>,
    pub teixidor_last: Option<i64>,
    pub teixidor_matches_window: bool,
    pub destabilizer: Option<DestabilizerSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerSection {
    pub region: RatInterval,
    pub feasible: usize,
    pub first: Option<i64>,
    pub last: Option<i64>,
    pub matches_region: bool,
}

pub fn render_oracle_scan_text(report: &OracleScanReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "grid: N = {}", report.grid);
    let _ = writeln!(out, "closed-form window: {}", report.window);
    let _ = writeln!(
        out,
        "semistability-feasible grid points: {}{}",
        report.teixidor_feasible,
        span(report.teixidor_first, report.teixidor_last)
    );
    let _ = writeln!(
        out,
        "grid scan matches window: {}",
        yes_no(report.teixidor_matches_window)
    );
    match &report.destabilizer {
        Some(section) => {
            let _ = writeln!(out, "destabilizer-feasible region: {}", section.region);
            let _ = writeln!(
                out,
                "destabilizer-feasible grid points: {}{}",
                section.feasible,
                span(section.first, section.last)
            );
            let _ = writeln!(
                out,
                "grid scan matches region: {}",
                yes_no(section.matches_region)
            );
        }
        None => {
            let _ = writeln!(
                out,
                "destabilizer scan: skipped (s1, s2 not both given in the scenario)"
            );
        }
    }
    out
}

fn span(first: Option<i64>, last: Option<i64>) -> String {
    match (first, last) {
        (Some(a), Some(b)) => format!(" (t = {a}..{b})"),
        _ => String::new(),
    }
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

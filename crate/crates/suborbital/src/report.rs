//! Structured and plain-text rendering of verification results.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use suborbital_core::oracle::{LatticeReport, OrbitalReport, Pair, SelfPairedReport};
use suborbital_core::UnimodularMatrix;

/// How many entries of a long list are kept in a report.
pub const LIST_SAMPLE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    /// Reported but not failed, e.g. edges a bounded search did not reach.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { suite: suite.to_string(), passed, checks }
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_text(suites: &[SuiteReport]) -> String {
    let mut out = String::new();
    for s in suites {
        writeln!(out, "suite {}: {}", s.suite, verdict(s.passed)).unwrap();
        for c in &s.checks {
            writeln!(out, "  [{}] {}: {}", verdict(c.passed), c.name, c.summary).unwrap();
            for w in &c.warnings {
                writeln!(out, "    warning: {w}").unwrap();
            }
        }
    }
    writeln!(out, "overall: {}", verdict(suites.iter().all(|s| s.passed))).unwrap();
    out
}

pub fn render_json(suites: &[SuiteReport]) -> String {
    let doc = json!({
        "passed": suites.iter().all(|s| s.passed),
        "suites": suites,
    });
    serde_json::to_string(&doc).expect("report serializes")
}

pub fn pair_json(p: &Pair) -> Value {
    json!([p.0.to_string(), p.1.to_string()])
}

pub fn matrix_json(g: &UnimodularMatrix) -> Value {
    json!([[g.a(), g.b()], [g.c(), g.d()]])
}

fn pairs_sample(pairs: &[Pair]) -> Value {
    Value::Array(pairs.iter().take(LIST_SAMPLE).map(pair_json).collect())
}

pub fn orbital_json(r: &OrbitalReport) -> Value {
    json!({
        "spec": r.spec.to_string(),
        "group": r.group.to_string(),
        "entry_bound": r.entry_bound,
        "height_bound": r.height_bound,
        "orbital_pairs": r.orbital_pairs,
        "graph_edges": r.graph_edges,
        "soundness_failures": r.soundness_failures.len(),
        "soundness_sample": pairs_sample(&r.soundness_failures),
        "completeness_misses": r.completeness_misses.len(),
        "smallest_missing": r.smallest_missing.as_ref().map(pair_json),
    })
}

pub fn lattice_json(r: &LatticeReport) -> Value {
    let containments: Vec<Value> = r
        .containments
        .iter()
        .map(|c| {
            json!({
                "left": c.left.to_string(),
                "right": c.right.to_string(),
                "target": c.target.to_string(),
                "products": c.products,
                "failures": c.failures.len(),
                "failure_sample": c.failures.iter().take(LIST_SAMPLE)
                    .map(|(g, h)| json!([matrix_json(g), matrix_json(h)]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "n1": r.n1,
        "n2": r.n2,
        "entry_bound": r.entry_bound,
        "scanned": r.scanned,
        "intersection_failures": r.intersection_failures.len(),
        "intersection_sample": r.intersection_failures.iter().take(LIST_SAMPLE).map(matrix_json).collect::<Vec<_>>(),
        "containments": containments,
        "reverse_inclusion_checked": r.reverse_inclusion_checked,
    })
}

pub fn self_paired_json(r: &SelfPairedReport) -> Value {
    json!({
        "spec": r.spec.to_string(),
        "group": r.group.to_string(),
        "entry_bound": r.entry_bound,
        "predicted": r.predicted,
        "witness": r.witness.as_ref().map(matrix_json),
        "exact_swap": r.exact_swap.as_ref().map(matrix_json),
        "agrees": r.agrees(),
    })
}

pub fn self_paired_phrase(r: &SelfPairedReport) -> String {
    match (r.predicted, r.witness) {
        (true, Some(g)) => format!("self-paired, witness {g}"),
        (false, None) => "not self-paired, no witness".to_string(),
        (true, None) => format!("self-paired by u^2 = ±1, but no swapping element of {} within the bound", r.group),
        (false, Some(g)) => format!("not self-paired, but {g} swaps the base pair"),
    }
}

//! Report assembly and rendering.
//!
//! The JSON report is the contract: `serde_json` maps keep keys in sorted
//! order, every payload is built from deterministic library output, and no
//! run-specific data (paths, times) is included, so identical scenario
//! files produce byte-identical reports.  The text format renders the same
//! payload for humans.

use ballean::derive::DerivedOrder;
use ballean::search::{Certificate, ConstraintScenario, SearchStep};
use ballean::selector::{ModulusOutcome, ModulusTable, SelectorCheckReport};
use ballean::space::ValidationReport;
use ballean::transfer::TransferReport;
use ballean::Window;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Found,
    Unsat,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Found => "found",
            Outcome::Unsat => "unsat",
            Outcome::Inconclusive => "inconclusive",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass | Outcome::Found => 0,
            Outcome::Fail | Outcome::Unsat => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub task: &'static str,
    pub outcome: Outcome,
    pub detail: Value,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "version": crate::input::SCHEMA_VERSION,
            "task": self.task,
            "outcome": self.outcome.as_str(),
            "detail": self.detail,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("task: {}\noutcome: {}\n", self.task, self.outcome.as_str());
                if !self.detail.is_null() {
                    s.push_str("detail:\n");
                    s.push_str(&indent(
                        &serde_json::to_string_pretty(&self.detail).expect("reports serialize"),
                    ));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn indent(text: &str) -> String {
    text.lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn modulus_json(table: &ModulusTable) -> Value {
    Value::Array(
        table
            .entries
            .iter()
            .map(|e| match &e.outcome {
                ModulusOutcome::Bounded { target_scale } => json!({
                    "source_scale": e.source_scale,
                    "target_scale": target_scale,
                }),
                ModulusOutcome::NoModulusWithinWindow { witness } => json!({
                    "source_scale": e.source_scale,
                    "unbounded_witness": {
                        "element": witness.element,
                        "neighbor": witness.neighbor,
                        "value_at_element": witness.value_at_element,
                        "value_at_neighbor": witness.value_at_neighbor,
                    },
                }),
            })
            .collect(),
    )
}

pub fn selector_check_json(report: &SelectorCheckReport) -> Value {
    json!({
        "domain_size": report.domain_size,
        "choice_violations": report.choice_violations,
        "missing_assignments": report.missing_assignments,
        "modulus": modulus_json(&report.modulus),
        "pass": report.pass,
    })
}

pub fn validation_json(report: &ValidationReport) -> Value {
    let violations: Vec<Value> = report
        .entries
        .iter()
        .filter(|e| e.is_violation())
        .map(|e| json!({"code": e.code(), "message": e.to_string()}))
        .collect();
    let notes: Vec<Value> = report
        .entries
        .iter()
        .filter(|e| !e.is_violation())
        .map(|e| json!({"code": e.code(), "message": e.to_string()}))
        .collect();
    json!({
        "violations": violations,
        "notes": notes,
        "pass": report.pass(),
    })
}

pub fn transfer_json(report: &TransferReport) -> Value {
    let bounds: Vec<Value> = report
        .bounds
        .iter()
        .map(|b| {
            json!({
                "discrete_scale": b.discrete_scale,
                "expected_scale": b.expected_scale,
                "actual_scale": b.actual_scale,
                "ok": b.ok(),
                "note": b.note,
            })
        })
        .collect();
    json!({
        "metric_check": selector_check_json(&report.metric),
        "discrete_check": report.discrete.as_ref().map(selector_check_json),
        "bornology_augmented": report.bornology_augmented,
        "union_closure_applied": report.union_closure_applied,
        "bounds": bounds,
        "pass": report.pass,
    })
}

pub fn order_json(window: &Window, derived: &DerivedOrder) -> Value {
    let by_rank: Vec<&str> = derived
        .order
        .by_rank()
        .iter()
        .map(|&p| window.label(p))
        .collect();
    let split = derived
        .order
        .split()
        .map(|(l, r)| json!([window.label(l), window.label(r)]));
    let markers = derived
        .markers
        .map(|(l, r)| json!([window.label(l), window.label(r)]));
    let anchor: Vec<&str> = derived.anchor.iter().map(|&p| window.label(p)).collect();
    json!({
        "case": derived.case.as_str(),
        "by_rank": by_rank,
        "split": split,
        "markers": markers,
        "anchor": anchor,
    })
}

fn render_step(sc: &ConstraintScenario, step: &SearchStep) -> String {
    let label = |v| sc.window().label(v);
    match *step {
        SearchStep::Decide { pair, value } => {
            format!("decide {} -> {}", sc.render_pair(pair), label(value))
        }
        SearchStep::Prune {
            pair,
            value,
            source,
        } => format!(
            "prune {} -/> {} (from {})",
            sc.render_pair(pair),
            label(value),
            sc.render_pair(source)
        ),
        SearchStep::Conflict { pair } => format!("conflict {}", sc.render_pair(pair)),
        SearchStep::Retract { pair, value } => {
            format!("retract {} -> {}", sc.render_pair(pair), label(value))
        }
    }
}

pub fn certificate_json(sc: &ConstraintScenario, cert: &Certificate) -> Value {
    Value::Array(
        cert.steps
            .iter()
            .map(|s| Value::String(render_step(sc, s)))
            .collect(),
    )
}

pub fn scenario_summary_json(sc: &ConstraintScenario) -> Value {
    let pairs: Vec<String> = (0..sc.len()).map(|i| sc.render_pair(i)).collect();
    json!({
        "window_size": sc.window().len(),
        "subsets": pairs,
    })
}

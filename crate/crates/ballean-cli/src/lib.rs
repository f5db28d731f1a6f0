//! Scenario-driven runner for the ballean toolkit.
//!
//! A scenario file names one task and its ingredients; running it yields a
//! deterministic report and an exit code: 0 for pass/found, 1 for
//! fail/unsat, 2 for inconclusive, 3 for structural errors (unreadable
//! input, schema violations, or ingredients that cannot be built).

pub mod input;
pub mod report;

use ballean::bornology::covered_family_difference;
use ballean::derive::{order_from_two_selector_with, DeriveOutcome};
use ballean::order::{interval_base_from_chain, interval_bornology};
use ballean::search::{replay_certificate, search_with_budget, verify_witness, SearchOutcome};
use ballean::selector::{check_selector, SelectorDomain};
use ballean::space::discrete_from_bornology;
use ballean::transfer::discrete_transfer;
use ballean::PointSet;
use serde_json::json;

use input::{resolve, ScenarioFile, TaskKind};
use report::{Format, Outcome, Report};

/// Assignments above this count are summarized rather than listed.
const ASSIGNMENT_LISTING_LIMIT: usize = 256;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub format: Format,
    pub max_steps: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            format: Format::Json,
            max_steps: None,
        }
    }
}

/// Runs a scenario document.  Returns the exit code and the rendered
/// report, or a structural diagnostic (exit code 3).
pub fn run_str(text: &str, opts: &RunOptions) -> Result<(i32, String), String> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| format!("scenario: {e}"))?;
    if file.version != input::SCHEMA_VERSION {
        return Err(format!(
            "version: expected {}, got {}",
            input::SCHEMA_VERSION,
            file.version
        ));
    }
    let report = execute(&file, opts)?;
    Ok((report.outcome.exit_code(), report.render(opts.format)))
}

fn execute(file: &ScenarioFile, opts: &RunOptions) -> Result<Report, String> {
    let task = file.task.as_str();
    let r = resolve(file)?;
    let window = r.window.clone();

    match file.task {
        TaskKind::Validate => {
            let space = r.coarse.as_ref().ok_or("coarse: required for validate")?;
            let validation = space.validate();
            Ok(Report {
                task,
                outcome: Outcome::from_pass(validation.pass()),
                detail: report::validation_json(&validation),
            })
        }

        TaskKind::CheckSelector | TaskKind::CheckTwoSelector => {
            let space = r.coarse.as_ref().ok_or("coarse: required for checks")?;
            let born = r.bornology.as_ref().ok_or("bornology: required for checks")?;
            let selector = r.selector.as_ref().ok_or("selector: required for checks")?;
            let wanted = match file.task {
                TaskKind::CheckSelector => SelectorDomain::CoveredSubsets,
                _ => SelectorDomain::TwoSubsets,
            };
            if selector.domain != wanted {
                return Err(format!(
                    "selector: task {task} needs domain \"{}\", got \"{}\"",
                    wanted.as_str(),
                    selector.domain.as_str()
                ));
            }
            let check = check_selector(selector, space, born).map_err(|e| format!("{task}: {e}"))?;
            Ok(Report {
                task,
                outcome: Outcome::from_pass(check.pass),
                detail: report::selector_check_json(&check),
            })
        }

        TaskKind::DeriveOrder => {
            let born = r
                .bornology
                .as_ref()
                .ok_or("bornology: required for derive-order")?;
            let selector = r
                .selector
                .as_ref()
                .ok_or("selector: required for derive-order")?;
            if selector.domain != SelectorDomain::TwoSubsets {
                return Err(format!(
                    "selector: derive-order needs domain \"two-subsets\", got \"{}\"",
                    selector.domain.as_str()
                ));
            }
            let outcome = order_from_two_selector_with(selector, born, r.markers)
                .map_err(|e| format!("derive-order: {e}"))?;
            match outcome {
                DeriveOutcome::Derived(derived) => Ok(Report {
                    task,
                    outcome: Outcome::Pass,
                    detail: json!({ "order": report::order_json(&window, &derived) }),
                }),
                DeriveOutcome::PreconditionFailed(check) => Ok(Report {
                    task,
                    outcome: Outcome::Fail,
                    detail: json!({ "precondition": report::selector_check_json(&check) }),
                }),
                DeriveOutcome::Inconclusive { reason } => Ok(Report {
                    task,
                    outcome: Outcome::Inconclusive,
                    detail: json!({ "reason": reason }),
                }),
            }
        }

        TaskKind::DeriveSelector => {
            let order = r.order.as_ref().ok_or("order: required for derive-selector")?;
            let selector = ballean::order::selector_from_split_order(order)
                .map_err(|e| format!("derive-selector: {e}"))?;
            let born = interval_bornology(order);
            let discrete =
                discrete_from_bornology(&born).map_err(|e| format!("derive-selector: {e}"))?;
            let check = check_selector(&selector, &discrete.presentation, &born)
                .map_err(|e| format!("derive-selector: {e}"))?;
            let assignments = if selector.len() <= ASSIGNMENT_LISTING_LIMIT {
                Some(
                    selector
                        .assignment
                        .iter()
                        .map(|(subset, &value)| {
                            json!([window.render_set(subset), window.label(value)])
                        })
                        .collect::<Vec<_>>(),
                )
            } else {
                None
            };
            Ok(Report {
                task,
                outcome: Outcome::from_pass(check.pass),
                detail: json!({
                    "selector_size": selector.len(),
                    "assignments": assignments,
                    "union_closure_applied": discrete.union_closure_applied,
                    "check": report::selector_check_json(&check),
                }),
            })
        }

        TaskKind::DeriveIntervalBase => {
            let chain = r
                .chain
                .as_ref()
                .ok_or("chain: required for derive-interval-base")?;
            let order =
                interval_base_from_chain(chain).map_err(|e| format!("chain: {e}"))?;
            let chain_born = chain.bornology();
            let interval_born = interval_bornology(&order);
            let everything = PointSet::full(window.len());
            let missing_from_intervals =
                covered_family_difference(&chain_born, &interval_born, &everything)
                    .map_err(|e| format!("derive-interval-base: {e}"))?;
            let missing_from_chain =
                covered_family_difference(&interval_born, &chain_born, &everything)
                    .map_err(|e| format!("derive-interval-base: {e}"))?;
            let levels_are_intervals = chain.levels().iter().all(|level| {
                order
                    .interval(
                        order.at_rank(0),
                        order.max_of(level).expect("levels are nonempty"),
                    )
                    .map(|iv| iv == *level)
                    .unwrap_or(false)
            });
            let matches = missing_from_intervals.is_none() && missing_from_chain.is_none();
            Ok(Report {
                task,
                outcome: Outcome::from_pass(matches && levels_are_intervals),
                detail: json!({
                    "by_rank": order
                        .by_rank()
                        .iter()
                        .map(|&p| window.label(p))
                        .collect::<Vec<_>>(),
                    "covered_family_matches": matches,
                    "levels_are_initial_intervals": levels_are_intervals,
                }),
            })
        }

        TaskKind::Search => {
            let sc = r
                .constraints
                .as_ref()
                .ok_or("constraints: required for search")?;
            let budget = opts.max_steps.unwrap_or(u64::MAX);
            match search_with_budget(sc, budget) {
                SearchOutcome::Found { assignment } => {
                    verify_witness(sc, &assignment)
                        .map_err(|e| format!("search: witness rejected: {e}"))?;
                    let listed: Vec<_> = assignment
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| json!([sc.render_pair(i), window.label(v)]))
                        .collect();
                    Ok(Report {
                        task,
                        outcome: Outcome::Found,
                        detail: json!({
                            "scenario": report::scenario_summary_json(sc),
                            "assignment": listed,
                            "verified": true,
                        }),
                    })
                }
                SearchOutcome::Unsat { certificate } => {
                    replay_certificate(sc, &certificate)
                        .map_err(|e| format!("search: certificate rejected: {e}"))?;
                    Ok(Report {
                        task,
                        outcome: Outcome::Unsat,
                        detail: json!({
                            "scenario": report::scenario_summary_json(sc),
                            "certificate_steps": certificate.steps.len(),
                            "certificate": report::certificate_json(sc, &certificate),
                            "replay": "ok",
                        }),
                    })
                }
                SearchOutcome::Inconclusive { steps_used } => Ok(Report {
                    task,
                    outcome: Outcome::Inconclusive,
                    detail: json!({
                        "scenario": report::scenario_summary_json(sc),
                        "steps_used": steps_used,
                    }),
                }),
            }
        }

        TaskKind::Transfer => {
            let space = r.coarse.as_ref().ok_or("coarse: required for transfer")?;
            let selector = r
                .selector
                .as_ref()
                .ok_or("selector: required for transfer")?;
            let transfer =
                discrete_transfer(selector, space).map_err(|e| format!("transfer: {e}"))?;
            Ok(Report {
                task,
                outcome: Outcome::from_pass(transfer.pass),
                detail: report::transfer_json(&transfer),
            })
        }
    }
}

//! Transfer of a selector from a presented space to the discrete space of
//! its bounded sets.
//!
//! A selector that is macro-uniform for a space stays macro-uniform when the
//! space is replaced by the discrete space of its bounded-set bornology.
//! The check runs both selector checks and, for each discrete scale, also
//! compares the discrete modulus actually found against the scale predicted
//! through the metric side: the least base entourage `F` (symmetrized)
//! absorbing the value drift of subsets related at the discrete scale, whose
//! thickening `F[B]` of the generating set must itself be a bounded set.

use crate::error::Error;
use crate::hyper::{lift_rows, SubsetUniverse};
use crate::point::{PointId, PointSet};
use crate::selector::{check_selector, SelectorCheckReport, SelectorDomain, SelectorMap};
use crate::space::{bounded_sets_bornology, discrete_from_bornology, CoarsePresentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferBound {
    pub discrete_scale: usize,
    /// Least discrete scale whose generator contains the metric thickening
    /// of this scale's generator; absent when the thickening escapes the
    /// discrete base or no metric entourage absorbs the drift.
    pub expected_scale: Option<usize>,
    /// Least discrete scale that bounds the value drift directly.
    pub actual_scale: Option<usize>,
    pub note: Option<String>,
}

impl TransferBound {
    pub fn ok(&self) -> Option<bool> {
        match (self.actual_scale, self.expected_scale) {
            (Some(a), Some(e)) => Some(a <= e),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransferReport {
    /// The selector check against the given space.
    pub metric: SelectorCheckReport,
    /// The selector check against the discrete space of the bounded sets,
    /// run only when the metric check passes.
    pub discrete: Option<SelectorCheckReport>,
    /// Whether building the bounded-set base added prefix unions.
    pub bornology_augmented: bool,
    /// Whether building the discrete space replaced the base by its chain
    /// of prefix unions.
    pub union_closure_applied: bool,
    pub bounds: Vec<TransferBound>,
    pub pass: bool,
}

/// Checks that `f`, a selector of `space`, is also a selector of the
/// discrete space of the bounded sets of `space`.
pub fn discrete_transfer(
    f: &SelectorMap,
    space: &CoarsePresentation,
) -> Result<TransferReport, Error> {
    let window = space.window().clone();
    let (born, bornology_augmented) = bounded_sets_bornology(space)?;

    let metric = check_selector(f, space, &born)?;
    if !metric.pass {
        return Ok(TransferReport {
            metric,
            discrete: None,
            bornology_augmented,
            union_closure_applied: false,
            bounds: Vec::new(),
            pass: false,
        });
    }

    let discrete = discrete_from_bornology(&born)?;
    let discrete_report = check_selector(f, &discrete.presentation, &born)?;

    // Recover the universe and values to predict each discrete modulus
    // through the metric base.
    let universe = match f.domain {
        SelectorDomain::CoveredSubsets => SubsetUniverse::covered(&born)?,
        SelectorDomain::TwoSubsets => SubsetUniverse::covered_pairs(&born),
    };
    let mut values: Vec<PointId> = Vec::with_capacity(universe.len());
    let mut complete = true;
    for a in universe.elements() {
        match f.get(a) {
            Some(v) => values.push(v),
            None => {
                complete = false;
                break;
            }
        }
    }
    let mut interior_elems = PointSet::empty(universe.len());
    for (i, a) in universe.elements().iter().enumerate() {
        if a.is_subset(window.interior()) {
            interior_elems.insert(PointId(i as u32));
        }
    }

    let mut bounds = Vec::new();
    if complete {
        let symmetrized: Vec<crate::entourage::Entourage> =
            space.base().iter().map(|e| e.symmetrized()).collect();
        for (k, gen) in discrete.generators.iter().enumerate() {
            let rows = lift_rows(discrete.presentation.scale(k), &universe);
            let mut metric_index = None;
            for (j, g) in symmetrized.iter().enumerate() {
                let ok = interior_elems.iter().all(|i| {
                    let vi = values[i.idx()];
                    rows[i.idx()]
                        .iter()
                        .all(|nbr| g.contains(vi, values[nbr.idx()]))
                });
                if ok {
                    metric_index = Some(j);
                    break;
                }
            }
            let (expected_scale, note) = match metric_index {
                None => (
                    None,
                    Some("no metric entourage absorbs the drift at this scale".to_string()),
                ),
                Some(j) => {
                    let thickening = symmetrized[j].ball(gen);
                    match discrete
                        .generators
                        .iter()
                        .position(|g| thickening.is_subset(g))
                    {
                        Some(m) => (Some(m), None),
                        None => (
                            None,
                            Some(format!(
                                "the thickening {} escapes the discrete base",
                                window.render_set(&thickening)
                            )),
                        ),
                    }
                }
            };
            bounds.push(TransferBound {
                discrete_scale: k,
                expected_scale,
                actual_scale: discrete_report.modulus.target_scale(k),
                note,
            });
        }
    }

    let pass = metric.pass
        && discrete_report.pass
        && bounds.iter().all(|b| b.ok() != Some(false));
    Ok(TransferReport {
        metric,
        discrete: Some(discrete_report),
        bornology_augmented,
        union_closure_applied: discrete.union_closure_applied,
        bounds,
        pass,
    })
}

//! Choice maps over bounded subsets, and the window-relative checks that
//! decide whether they are coarsely well behaved.
//!
//! A selector assigns to each subset in its domain one of that subset's own
//! points.  The macro-uniformity check asks, scale by scale, for a base
//! entourage of the target that bounds how far the selected values of
//! related subsets can drift apart; the least such scale per source scale is
//! recorded in a modulus table.  Failing to find one within the window's
//! base yields an explicit witness pair rather than a silent failure.

use std::collections::BTreeMap;

use crate::bornology::BornologyPresentation;
use crate::error::Error;
use crate::hyper::{lift_rows, SubsetUniverse};
use crate::point::{PointId, PointSet};
use crate::space::CoarsePresentation;
use crate::window::Window;

/// What family of subsets a selector is declared on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectorDomain {
    /// All nonempty covered subsets of a bornology.
    CoveredSubsets,
    /// All covered two-point subsets.
    TwoSubsets,
}

impl SelectorDomain {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectorDomain::CoveredSubsets => "covered-subsets",
            SelectorDomain::TwoSubsets => "two-subsets",
        }
    }
}

/// A choice map: subset -> chosen point.  Assignments are stored in
/// canonical subset order, so iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorMap {
    pub domain: SelectorDomain,
    pub assignment: BTreeMap<PointSet, PointId>,
}

impl SelectorMap {
    pub fn new(domain: SelectorDomain) -> Self {
        SelectorMap {
            domain,
            assignment: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, subset: PointSet, value: PointId) {
        self.assignment.insert(subset, value);
    }

    pub fn get(&self, subset: &PointSet) -> Option<PointId> {
        self.assignment.get(subset).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// The tournament induced on points: `a` precedes `b` when they are
    /// equal or the selector picks `a` out of the pair `{a, b}`.
    pub fn precedes(&self, window: &Window, a: PointId, b: PointId) -> Result<bool, Error> {
        if a == b {
            return Ok(true);
        }
        let pair = PointSet::from_points(window.len(), [a, b]);
        match self.get(&pair) {
            Some(v) => Ok(v == a),
            None => Err(Error::MissingAssignment {
                subset: window.render_set(&pair),
            }),
        }
    }
}

/// Per-scale outcome of a modulus search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulusOutcome {
    /// The least target scale that bounds the drift of values.
    Bounded { target_scale: usize },
    /// No base entourage of the target works; a witness shows two related
    /// elements whose values escape the top scale.
    NoModulusWithinWindow { witness: ModulusWitness },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusWitness {
    pub element: String,
    pub neighbor: String,
    pub value_at_element: String,
    pub value_at_neighbor: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusEntry {
    pub source_scale: usize,
    pub outcome: ModulusOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModulusTable {
    pub entries: Vec<ModulusEntry>,
}

impl ModulusTable {
    pub fn all_bounded(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.outcome, ModulusOutcome::Bounded { .. }))
    }

    pub fn target_scale(&self, source_scale: usize) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.source_scale == source_scale)
            .and_then(|e| match e.outcome {
                ModulusOutcome::Bounded { target_scale } => Some(target_scale),
                ModulusOutcome::NoModulusWithinWindow { .. } => None,
            })
    }
}

/// Shared search: given per-scale neighbor rows over an element universe,
/// the elements' values, and the set of interior element indices, find the
/// least target scale bounding each source scale.
fn least_moduli(
    labels: &[String],
    value_labels: &[String],
    values: &[PointId],
    interior_elems: &PointSet,
    rows_per_scale: &[Vec<PointSet>],
    target: &CoarsePresentation,
) -> ModulusTable {
    let mut entries = Vec::new();
    for (source_scale, rows) in rows_per_scale.iter().enumerate() {
        let mut found = None;
        for (j, g) in target.base().iter().enumerate() {
            let ok = interior_elems.iter().all(|i| {
                let vi = values[i.idx()];
                rows[i.idx()].iter().all(|nbr| g.contains(vi, values[nbr.idx()]))
            });
            if ok {
                found = Some(j);
                break;
            }
        }
        let outcome = match found {
            Some(target_scale) => ModulusOutcome::Bounded { target_scale },
            None => {
                let top = target.base().len() - 1;
                let g = target.scale(top);
                let (i, nbr) = interior_elems
                    .iter()
                    .find_map(|i| {
                        let vi = values[i.idx()];
                        rows[i.idx()]
                            .iter()
                            .find(|nbr| !g.contains(vi, values[nbr.idx()]))
                            .map(|nbr| (i, nbr))
                    })
                    .expect("an unbounded scale has a witness at the top scale");
                ModulusOutcome::NoModulusWithinWindow {
                    witness: ModulusWitness {
                        element: labels[i.idx()].clone(),
                        neighbor: labels[nbr.idx()].clone(),
                        value_at_element: value_labels[i.idx()].clone(),
                        value_at_neighbor: value_labels[nbr.idx()].clone(),
                    },
                }
            }
        };
        entries.push(ModulusEntry {
            source_scale,
            outcome,
        });
    }
    ModulusTable { entries }
}

/// Checks a total point map for macro-uniformity: for every source scale,
/// find a target scale receiving the images of related interior points.
pub fn check_macro_uniform(
    f: &[PointId],
    source: &CoarsePresentation,
    target: &CoarsePresentation,
) -> Result<ModulusTable, Error> {
    let sw = source.window();
    let tw = target.window();
    if f.len() != sw.len() {
        return Err(Error::BadParameter {
            what: format!("map has {} entries for {} points", f.len(), sw.len()),
        });
    }
    for &v in f {
        if v.idx() >= tw.len() {
            return Err(Error::UnknownPoint {
                detail: format!("image point {v}"),
            });
        }
    }
    let labels: Vec<String> = sw.labels().to_vec();
    let value_labels: Vec<String> = f.iter().map(|&v| tw.label(v).to_string()).collect();
    let rows_per_scale: Vec<Vec<PointSet>> = source
        .base()
        .iter()
        .map(|e| (0..sw.len()).map(|x| e.ball_of(PointId(x as u32)).clone()).collect())
        .collect();
    Ok(least_moduli(
        &labels,
        &value_labels,
        f,
        sw.interior(),
        &rows_per_scale,
        target,
    ))
}

/// Full report of a selector check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorCheckReport {
    /// Number of subsets the selector must cover.
    pub domain_size: usize,
    /// Assignments whose value is not a member of the subset.
    pub choice_violations: Vec<String>,
    /// Universe subsets with no assignment.
    pub missing_assignments: Vec<String>,
    /// Least modulus per scale of the lifted relation, when computable.
    pub modulus: ModulusTable,
    pub pass: bool,
}

/// Checks that `s` is a selector of `space` relative to `born`: it chooses a
/// member of every subset in its domain, and the induced map from the lifted
/// relation back into the space is macro-uniform on interior elements.
/// An element of the lift is interior when it consists of interior points.
pub fn check_selector(
    s: &SelectorMap,
    space: &CoarsePresentation,
    born: &BornologyPresentation,
) -> Result<SelectorCheckReport, Error> {
    let window = space.window();
    if !window.same_as(born.window()) {
        return Err(Error::WindowMismatch {
            context: "selector check",
        });
    }
    let universe = match s.domain {
        SelectorDomain::CoveredSubsets => SubsetUniverse::covered(born)?,
        SelectorDomain::TwoSubsets => SubsetUniverse::covered_pairs(born),
    };

    let mut choice_violations = Vec::new();
    for (subset, &value) in &s.assignment {
        if subset.universe() != window.len() {
            return Err(Error::BadParameter {
                what: "selector assignment sized for a different window".into(),
            });
        }
        if !subset.contains(value) {
            choice_violations.push(format!(
                "{} -> {}",
                window.render_set(subset),
                window.label(value)
            ));
        }
    }

    let mut missing_assignments = Vec::new();
    let mut values: Vec<PointId> = Vec::with_capacity(universe.len());
    for a in universe.elements() {
        match s.get(a) {
            Some(v) => values.push(v),
            None => {
                missing_assignments.push(window.render_set(a));
                values.push(a.first().expect("universe subsets are nonempty"));
            }
        }
    }

    if !missing_assignments.is_empty() || !choice_violations.is_empty() {
        return Ok(SelectorCheckReport {
            domain_size: universe.len(),
            choice_violations,
            missing_assignments,
            modulus: ModulusTable::default(),
            pass: false,
        });
    }

    let labels: Vec<String> = universe
        .elements()
        .iter()
        .map(|a| window.render_set(a))
        .collect();
    let value_labels: Vec<String> = values
        .iter()
        .map(|&v| window.label(v).to_string())
        .collect();
    let mut interior_elems = PointSet::empty(universe.len());
    for (i, a) in universe.elements().iter().enumerate() {
        if a.is_subset(window.interior()) {
            interior_elems.insert(PointId(i as u32));
        }
    }
    let rows_per_scale: Vec<Vec<PointSet>> = space
        .base()
        .iter()
        .map(|e| lift_rows(e, &universe))
        .collect();
    let modulus = least_moduli(
        &labels,
        &value_labels,
        &values,
        &interior_elems,
        &rows_per_scale,
        space,
    );
    let pass = modulus.all_bounded();
    Ok(SelectorCheckReport {
        domain_size: universe.len(),
        choice_violations,
        missing_assignments,
        modulus,
        pass,
    })
}

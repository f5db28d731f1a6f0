//! Scenario file schema and resolution into library objects.
//!
//! A scenario is a single JSON document, versioned with a top-level
//! `version` field (currently 1).  It names a task and provides the
//! ingredients the task needs: a window, a coarse presentation, a
//! bornology, an order, a selector, a chain, or a constraint scenario.
//! Resolution errors carry the offending field in their message.

use std::sync::Arc;

use ballean::order::{interval_bornology, ChainBase, LinearOrder};
use ballean::scenario::{
    antipodal_grid_scenario, flip_two_selector, graph_path_presentation, grid_window,
    ngon_scenario, ordinal_sum_window, sup_metric_presentation,
};
use ballean::search::ConstraintScenario;
use ballean::selector::{SelectorDomain, SelectorMap};
use ballean::space::discrete_from_bornology;
use ballean::{
    BornologyPresentation, CoarsePresentation, Entourage, PointId, PointSet, Window,
};
use serde::Deserialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub task: TaskKind,
    #[serde(default)]
    pub window: Option<WindowSpec>,
    #[serde(default)]
    pub coarse: Option<CoarseSpec>,
    #[serde(default)]
    pub bornology: Option<BornologySpec>,
    #[serde(default)]
    pub order: Option<OrderSpec>,
    #[serde(default)]
    pub selector: Option<SelectorSpec>,
    #[serde(default)]
    pub chain: Option<ChainSpec>,
    #[serde(default)]
    pub constraints: Option<ConstraintSpec>,
    /// Optional anchor markers for order derivation.
    #[serde(default)]
    pub markers: Option<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Validate,
    CheckSelector,
    CheckTwoSelector,
    DeriveOrder,
    DeriveSelector,
    DeriveIntervalBase,
    Search,
    Transfer,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Validate => "validate",
            TaskKind::CheckSelector => "check-selector",
            TaskKind::CheckTwoSelector => "check-two-selector",
            TaskKind::DeriveOrder => "derive-order",
            TaskKind::DeriveSelector => "derive-selector",
            TaskKind::DeriveIntervalBase => "derive-interval-base",
            TaskKind::Search => "search",
            TaskKind::Transfer => "transfer",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WindowSpec {
    /// Explicit labelled points, optionally with an interior subset and
    /// integer coordinates.
    Points {
        labels: Vec<String>,
        #[serde(default)]
        interior: Option<Vec<String>>,
        #[serde(default)]
        coords: Option<Vec<[i64; 2]>>,
    },
    /// A rectangular grid with labels `(x,y)` and matching coordinates.
    Grid { width: usize, height: usize },
    /// A reversed segment followed by a plain segment, with the split
    /// order between them built in.
    OrdinalSum { left: usize, right: usize },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoarseSpec {
    /// Sup-metric balls on the window coordinates, one scale per radius.
    MetricRadii { radii: Vec<u64> },
    /// Path-metric balls of an undirected graph over point indices.
    Graph {
        edges: Vec<(usize, usize)>,
        radii: Vec<u64>,
    },
    /// Explicit scales: each scale lists related label pairs; the diagonal
    /// is always added.
    Relations { scales: Vec<Vec<(String, String)>> },
    /// The discrete space of the scenario's bornology.
    DiscreteFromBornology,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BornologySpec {
    /// Explicit base sets by label.
    Base { sets: Vec<Vec<String>> },
    /// All closed intervals of the scenario order.
    IntervalOfOrder,
    /// The levels of the scenario chain.
    Chain,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OrderSpec {
    /// Window listing order, with an optional split.
    Natural {
        #[serde(default)]
        split: Option<(String, String)>,
    },
    /// Explicit ranking from least to greatest, with an optional split.
    Listed {
        by_rank: Vec<String>,
        #[serde(default)]
        split: Option<(String, String)>,
    },
    /// The order built into the window (ordinal-sum windows only).
    Window,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SelectorSpec {
    /// Rank minimum of the scenario order on every two-point subset.
    MinOfOrder,
    /// The split-order selector on every nonempty subset.
    SplitOrder,
    /// Lexicographically largest point by `(y, x)` coordinates.
    Flip,
    /// Explicit assignments: each entry lists a subset and its value.
    Explicit {
        domain: String,
        assignments: Vec<(Vec<String>, String)>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub levels: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ConstraintSpec {
    /// The antipodal sphere subsets of a sup-metric grid; unsatisfiable
    /// for every radius.
    AntipodalGrid { n: usize },
    /// Antipodal vertex subsets of a regular even polygon.
    Ngon {
        sides: usize,
        delta: f64,
        epsilon: f64,
    },
    /// Explicit subsets, closeness edges over their listed indices, and
    /// allowed value pairs.
    Explicit {
        pairs: Vec<(String, String)>,
        #[serde(default)]
        close: Vec<(usize, usize)>,
        #[serde(default)]
        allowed: Vec<(String, String)>,
    },
}

/// Everything a task handler might need, resolved once.
pub struct Resolved {
    pub window: Arc<Window>,
    pub order: Option<LinearOrder>,
    pub bornology: Option<BornologyPresentation>,
    pub coarse: Option<CoarsePresentation>,
    /// Set when the coarse space came from a bornology whose base had to be
    /// replaced by its chain of prefix unions.
    pub coarse_chainified: Option<bool>,
    pub selector: Option<SelectorMap>,
    pub chain: Option<ChainBase>,
    pub constraints: Option<ConstraintScenario>,
    pub markers: Option<(PointId, PointId)>,
}

fn fail<T>(field: &str, message: impl std::fmt::Display) -> Result<T, String> {
    Err(format!("{field}: {message}"))
}

fn point(window: &Window, field: &str, label: &str) -> Result<PointId, String> {
    window
        .point(label)
        .ok_or_else(|| format!("{field}: unknown point {label:?}"))
}

fn label_set(window: &Window, field: &str, labels: &[String]) -> Result<PointSet, String> {
    let mut s = PointSet::empty(window.len());
    for l in labels {
        s.insert(point(window, field, l)?);
    }
    Ok(s)
}

pub fn resolve(file: &ScenarioFile) -> Result<Resolved, String> {
    // Window, plus the order built into ordinal-sum windows.
    let (window, built_in_order) = match &file.window {
        Some(WindowSpec::Points {
            labels,
            interior,
            coords,
        }) => {
            let interior_set = match interior {
                None => PointSet::full(labels.len()),
                Some(ls) => {
                    let mut index = std::collections::BTreeMap::new();
                    for (i, l) in labels.iter().enumerate() {
                        index.insert(l.as_str(), PointId(i as u32));
                    }
                    let mut s = PointSet::empty(labels.len());
                    for l in ls {
                        match index.get(l.as_str()) {
                            Some(&p) => s.insert(p),
                            None => return fail("window.interior", format!("unknown point {l:?}")),
                        }
                    }
                    s
                }
            };
            let w = match coords {
                Some(cs) => Window::with_coords(labels.clone(), interior_set, cs.clone()),
                None => Window::build(labels.clone(), interior_set, None),
            }
            .map_err(|e| format!("window: {e}"))?;
            (w, None)
        }
        Some(WindowSpec::Grid { width, height }) => (
            grid_window(*width, *height).map_err(|e| format!("window: {e}"))?,
            None,
        ),
        Some(WindowSpec::OrdinalSum { left, right }) => {
            let order = ordinal_sum_window(*left, *right).map_err(|e| format!("window: {e}"))?;
            (order.window().clone(), Some(order))
        }
        None => match &file.constraints {
            // Generated constraint scenarios carry their own window.
            Some(ConstraintSpec::AntipodalGrid { .. }) | Some(ConstraintSpec::Ngon { .. }) => {
                let sc = resolve_constraints(file, None)?;
                let window = sc.window().clone();
                return Ok(Resolved {
                    window,
                    order: None,
                    bornology: None,
                    coarse: None,
                    coarse_chainified: None,
                    selector: None,
                    chain: None,
                    constraints: Some(sc),
                    markers: None,
                });
            }
            _ => return fail("window", "required for this scenario"),
        },
    };

    let order = match &file.order {
        None => built_in_order,
        Some(OrderSpec::Window) => match built_in_order {
            Some(o) => Some(o),
            None => return fail("order", "kind \"window\" needs an ordinal-sum window"),
        },
        Some(OrderSpec::Natural { split }) => {
            let base = LinearOrder::natural(window.clone());
            Some(apply_split(base, split, &window)?)
        }
        Some(OrderSpec::Listed { by_rank, split }) => {
            let ranks = by_rank
                .iter()
                .map(|l| point(&window, "order.by_rank", l))
                .collect::<Result<Vec<_>, _>>()?;
            let base =
                LinearOrder::new(window.clone(), ranks).map_err(|e| format!("order: {e}"))?;
            Some(apply_split(base, split, &window)?)
        }
    };

    let chain = match &file.chain {
        None => None,
        Some(ChainSpec { levels }) => {
            let level_sets = levels
                .iter()
                .map(|ls| label_set(&window, "chain.levels", ls))
                .collect::<Result<Vec<_>, _>>()?;
            Some(
                ChainBase::from_levels(window.clone(), level_sets)
                    .map_err(|e| format!("chain: {e}"))?,
            )
        }
    };

    let bornology = match &file.bornology {
        None => None,
        Some(BornologySpec::Base { sets }) => {
            let base = sets
                .iter()
                .map(|ls| label_set(&window, "bornology.sets", ls))
                .collect::<Result<Vec<_>, _>>()?;
            Some(
                BornologyPresentation::new(window.clone(), base)
                    .map_err(|e| format!("bornology: {e}"))?,
            )
        }
        Some(BornologySpec::IntervalOfOrder) => match &order {
            Some(o) => Some(interval_bornology(o)),
            None => return fail("bornology", "kind \"interval-of-order\" needs an order"),
        },
        Some(BornologySpec::Chain) => match &chain {
            Some(c) => Some(c.bornology()),
            None => return fail("bornology", "kind \"chain\" needs a chain"),
        },
    };

    let (coarse, coarse_chainified) = match &file.coarse {
        None => (None, None),
        Some(CoarseSpec::MetricRadii { radii }) => (
            Some(
                sup_metric_presentation(window.clone(), radii)
                    .map_err(|e| format!("coarse: {e}"))?,
            ),
            None,
        ),
        Some(CoarseSpec::Graph { edges, radii }) => (
            Some(
                graph_path_presentation(window.clone(), edges, radii)
                    .map_err(|e| format!("coarse: {e}"))?,
            ),
            None,
        ),
        Some(CoarseSpec::Relations { scales }) => {
            if scales.is_empty() {
                return fail("coarse.scales", "at least one scale is required");
            }
            let mut base = Vec::with_capacity(scales.len());
            for pairs in scales {
                let mut e = Entourage::diagonal(window.clone());
                for (a, b) in pairs {
                    e = e.with_pair(
                        point(&window, "coarse.scales", a)?,
                        point(&window, "coarse.scales", b)?,
                    );
                }
                base.push(e);
            }
            (
                Some(
                    CoarsePresentation::new(window.clone(), base)
                        .map_err(|e| format!("coarse: {e}"))?,
                ),
                None,
            )
        }
        Some(CoarseSpec::DiscreteFromBornology) => match &bornology {
            Some(b) => {
                let d = discrete_from_bornology(b).map_err(|e| format!("coarse: {e}"))?;
                (Some(d.presentation), Some(d.union_closure_applied))
            }
            None => {
                return fail("coarse", "kind \"discrete-from-bornology\" needs a bornology")
            }
        },
    };

    let selector = match &file.selector {
        None => None,
        Some(SelectorSpec::MinOfOrder) => match &order {
            Some(o) => Some(ballean::order::two_selector_from_order(o)),
            None => return fail("selector", "kind \"min-of-order\" needs an order"),
        },
        Some(SelectorSpec::SplitOrder) => match &order {
            Some(o) => Some(
                ballean::order::selector_from_split_order(o)
                    .map_err(|e| format!("selector: {e}"))?,
            ),
            None => return fail("selector", "kind \"split-order\" needs an order"),
        },
        Some(SelectorSpec::Flip) => {
            Some(flip_two_selector(&window).map_err(|e| format!("selector: {e}"))?)
        }
        Some(SelectorSpec::Explicit {
            domain,
            assignments,
        }) => {
            let domain = match domain.as_str() {
                "two-subsets" => SelectorDomain::TwoSubsets,
                "covered-subsets" => SelectorDomain::CoveredSubsets,
                other => {
                    return fail(
                        "selector.domain",
                        format!("expected \"two-subsets\" or \"covered-subsets\", got {other:?}"),
                    )
                }
            };
            let mut s = SelectorMap::new(domain);
            for (subset, value) in assignments {
                s.insert(
                    label_set(&window, "selector.assignments", subset)?,
                    point(&window, "selector.assignments", value)?,
                );
            }
            Some(s)
        }
    };

    let constraints = match &file.constraints {
        None => None,
        Some(_) => Some(resolve_constraints(file, Some(&window))?),
    };

    let markers = match &file.markers {
        None => None,
        Some((a, b)) => Some((point(&window, "markers", a)?, point(&window, "markers", b)?)),
    };

    Ok(Resolved {
        window,
        order,
        bornology,
        coarse,
        coarse_chainified,
        selector,
        chain,
        constraints,
        markers,
    })
}

fn apply_split(
    order: LinearOrder,
    split: &Option<(String, String)>,
    window: &Arc<Window>,
) -> Result<LinearOrder, String> {
    match split {
        None => Ok(order),
        Some((l, r)) => order
            .with_split(
                point(window, "order.split", l)?,
                point(window, "order.split", r)?,
            )
            .map_err(|e| format!("order.split: {e}")),
    }
}

fn resolve_constraints(
    file: &ScenarioFile,
    window: Option<&Arc<Window>>,
) -> Result<ConstraintScenario, String> {
    match file.constraints.as_ref().expect("caller checked presence") {
        ConstraintSpec::AntipodalGrid { n } => {
            antipodal_grid_scenario(*n).map_err(|e| format!("constraints: {e}"))
        }
        ConstraintSpec::Ngon {
            sides,
            delta,
            epsilon,
        } => ngon_scenario(*sides, *delta, *epsilon).map_err(|e| format!("constraints: {e}")),
        ConstraintSpec::Explicit {
            pairs,
            close,
            allowed,
        } => {
            let window = match window {
                Some(w) => w,
                None => return fail("window", "required for explicit constraints"),
            };
            let pair_points = pairs
                .iter()
                .map(|(a, b)| {
                    Ok((
                        point(window, "constraints.pairs", a)?,
                        point(window, "constraints.pairs", b)?,
                    ))
                })
                .collect::<Result<Vec<_>, String>>()?;
            let allowed_points = allowed
                .iter()
                .map(|(a, b)| {
                    Ok((
                        point(window, "constraints.allowed", a)?,
                        point(window, "constraints.allowed", b)?,
                    ))
                })
                .collect::<Result<Vec<_>, String>>()?;
            ConstraintScenario::new(window.clone(), pair_points, close, &allowed_points)
                .map_err(|e| format!("constraints: {e}"))
        }
    }
}

//! Coarse presentations: a window plus a finite base of entourages.
//!
//! The base is expected to ascend under inclusion, contain the diagonal, and
//! be closed (inside the window) under composition and inverse up to
//! enlargement by another base element.  `validate` checks these expectations
//! on interior points and reports violations instead of failing, because a
//! presentation that breaks them is still a useful object to inspect.

use std::fmt;
use std::sync::Arc;

use crate::bornology::BornologyPresentation;
use crate::entourage::Entourage;
use crate::error::Error;
use crate::point::{PointId, PointSet};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarsePresentation {
    window: Arc<Window>,
    base: Vec<Entourage>,
}

impl CoarsePresentation {
    pub fn new(window: Arc<Window>, base: Vec<Entourage>) -> Result<Self, Error> {
        if base.is_empty() {
            return Err(Error::BadParameter {
                what: "entourage base must be nonempty".into(),
            });
        }
        for e in &base {
            if !e.window().same_as(&window) {
                return Err(Error::WindowMismatch {
                    context: "coarse presentation base",
                });
            }
        }
        Ok(CoarsePresentation { window, base })
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn base(&self) -> &[Entourage] {
        &self.base
    }

    pub fn scale(&self, i: usize) -> &Entourage {
        &self.base[i]
    }

    pub fn validate(&self) -> ValidationReport {
        let interior = self.window.interior();
        let mut entries = Vec::new();

        for (i, e) in self.base.iter().enumerate() {
            if let Some(p) = e.missing_diagonal_witness() {
                entries.push(ValidationEntry::MissingDiagonal {
                    scale: i,
                    point: self.window.label(p).to_string(),
                });
            }
        }

        for i in 1..self.base.len() {
            if !self.base[i - 1].is_subrelation_of(&self.base[i]) {
                entries.push(ValidationEntry::BaseNotAscending { scale: i });
            }
        }

        // Composition and inverse must stay inside the base, up to
        // enlargement, when observed from interior points.
        for (i, e) in self.base.iter().enumerate() {
            for (j, f) in self.base.iter().enumerate() {
                let comp = match e.compose(f) {
                    Ok(c) => c,
                    Err(_) => unreachable!("base entourages share the window"),
                };
                let absorbed = self
                    .base
                    .iter()
                    .any(|g| comp.contained_on_interior(g, interior));
                if !absorbed {
                    let witness = comp
                        .interior_escape_witness(self.base.last().unwrap(), interior)
                        .or_else(|| interior.first());
                    entries.push(ValidationEntry::CompositionEscapes {
                        left: i,
                        right: j,
                        witness: witness
                            .map(|p| self.window.label(p).to_string())
                            .unwrap_or_default(),
                    });
                }
            }
            let inv = e.inverse();
            let absorbed = self
                .base
                .iter()
                .any(|g| inv.contained_on_interior(g, interior));
            if !absorbed {
                let witness = inv
                    .interior_escape_witness(self.base.last().unwrap(), interior)
                    .or_else(|| interior.first());
                entries.push(ValidationEntry::InverseEscapes {
                    scale: i,
                    witness: witness
                        .map(|p| self.window.label(p).to_string())
                        .unwrap_or_default(),
                });
            }
        }

        // Connectivity within the window is informational: the union of the
        // base need not relate every pair of interior points.
        let mut union = Entourage::diagonal(self.window.clone());
        for e in &self.base {
            union = union.union(e).expect("base entourages share the window");
            union = union
                .union(&e.inverse())
                .expect("base entourages share the window");
        }
        'outer: for x in interior.iter() {
            for y in interior.iter() {
                if y <= x {
                    continue;
                }
                if !union.contains(x, y) {
                    entries.push(ValidationEntry::NotConnected {
                        left: self.window.label(x).to_string(),
                        right: self.window.label(y).to_string(),
                    });
                    break 'outer;
                }
            }
        }

        ValidationReport { entries }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationEntry {
    /// Scale `scale` does not relate `point` to itself.
    MissingDiagonal { scale: usize, point: String },
    /// Scale `scale - 1` is not contained in scale `scale`.
    BaseNotAscending { scale: usize },
    /// `compose(base[left], base[right])` escapes every base element on an
    /// interior point.
    CompositionEscapes {
        left: usize,
        right: usize,
        witness: String,
    },
    /// `inverse(base[scale])` escapes every base element on an interior point.
    InverseEscapes { scale: usize, witness: String },
    /// Informational: two interior points are unrelated at every scale.
    NotConnected { left: String, right: String },
}

impl ValidationEntry {
    pub fn is_violation(&self) -> bool {
        !matches!(self, ValidationEntry::NotConnected { .. })
    }

    pub fn code(&self) -> &'static str {
        match self {
            ValidationEntry::MissingDiagonal { .. } => "missing-diagonal",
            ValidationEntry::BaseNotAscending { .. } => "base-not-ascending",
            ValidationEntry::CompositionEscapes { .. } => "composition-escapes-base",
            ValidationEntry::InverseEscapes { .. } => "inverse-escapes-base",
            ValidationEntry::NotConnected { .. } => "not-connected-within-window",
        }
    }
}

impl fmt::Display for ValidationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationEntry::MissingDiagonal { scale, point } => {
                write!(f, "scale {scale} misses the diagonal at {point}")
            }
            ValidationEntry::BaseNotAscending { scale } => {
                write!(f, "scale {} is not contained in scale {scale}", scale - 1)
            }
            ValidationEntry::CompositionEscapes {
                left,
                right,
                witness,
            } => write!(
                f,
                "compose(scale {left}, scale {right}) escapes the base near {witness}"
            ),
            ValidationEntry::InverseEscapes { scale, witness } => {
                write!(f, "inverse(scale {scale}) escapes the base near {witness}")
            }
            ValidationEntry::NotConnected { left, right } => {
                write!(f, "{left} and {right} are unrelated at every scale")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| !e.is_violation())
    }

    pub fn violations(&self) -> impl Iterator<Item = &ValidationEntry> {
        self.entries.iter().filter(|e| e.is_violation())
    }
}

/// The discrete coarse space of a bornology, together with the bounded set
/// generating each scale.
#[derive(Debug, Clone)]
pub struct DiscretePresentation {
    pub presentation: CoarsePresentation,
    /// `generators[i]` is the bounded set `B` whose relation is scale `i`:
    /// the ball of `x` is `B` when `x` lies in `B` and `{x}` otherwise.
    pub generators: Vec<PointSet>,
    /// True when the declared base was not a chain and ascending prefix
    /// unions were substituted for it.
    pub union_closure_applied: bool,
}

/// The relation of a single bounded set: the ball of `x` is `b` when `x`
/// lies in `b` and `{x}` otherwise.
pub fn discrete_entourage(window: &Arc<Window>, b: &PointSet) -> Entourage {
    let n = window.len();
    let balls = (0..n)
        .map(|i| {
            let p = PointId(i as u32);
            if b.contains(p) {
                b.clone()
            } else {
                PointSet::singleton(n, p)
            }
        })
        .collect();
    Entourage::new(window.clone(), balls).expect("balls sized for the window")
}

/// Builds the discrete coarse space of a bornology presentation.
///
/// Each base element `B` yields the relation whose ball at `x` is `B` for
/// `x` in `B` and `{x}` elsewhere.  Distinct base elements can yield the
/// same relation (all singletons give the diagonal); duplicates keep their
/// canonically least generator.  When the resulting relations do not ascend,
/// absorbing compositions inside the base is impossible, so the base is
/// replaced by the ascending chain of prefix unions and the substitution is
/// flagged on the result.
pub fn discrete_from_bornology(
    born: &BornologyPresentation,
) -> Result<DiscretePresentation, Error> {
    let window = born.window().clone();
    let mut generators: Vec<PointSet> = Vec::new();
    let mut relations: Vec<Entourage> = Vec::new();
    for b in born.base() {
        let e = discrete_entourage(&window, b);
        if !relations.contains(&e) {
            generators.push(b.clone());
            relations.push(e);
        }
    }
    if relations.is_empty() {
        return Err(Error::BadParameter {
            what: "bornology base is empty; the discrete space needs a scale".into(),
        });
    }
    let ascending = relations
        .windows(2)
        .all(|p| p[0].is_subrelation_of(&p[1]));
    if ascending {
        return Ok(DiscretePresentation {
            presentation: CoarsePresentation::new(window, relations)?,
            generators,
            union_closure_applied: false,
        });
    }
    // Prefix unions of the canonically sorted base form a chain; equal
    // consecutive unions collapse.
    let mut union_gens: Vec<PointSet> = Vec::new();
    let mut acc = PointSet::empty(window.len());
    for b in born.base() {
        acc.union_with(b);
        if union_gens.last() != Some(&acc) {
            union_gens.push(acc.clone());
        }
    }
    let relations = union_gens
        .iter()
        .map(|b| discrete_entourage(&window, b))
        .collect();
    Ok(DiscretePresentation {
        presentation: CoarsePresentation::new(window, relations)?,
        generators: union_gens,
        union_closure_applied: true,
    })
}

/// The bornology of bounded sets of a presented coarse space: its base
/// collects the balls of interior points at every scale.  When the collected
/// balls do not form a chain (ignoring singletons), ascending prefix unions
/// are *added* so that the result presents the same bounded sets but also
/// supports a discrete space; the originals stay in the base.
pub fn bounded_sets_bornology(
    space: &CoarsePresentation,
) -> Result<(BornologyPresentation, bool), Error> {
    let window = space.window().clone();
    let mut sets: Vec<PointSet> = Vec::new();
    for e in space.base() {
        for x in window.interior().iter() {
            let ball = e.ball_of(x).clone();
            if !ball.is_empty() && !sets.contains(&ball) {
                sets.push(ball);
            }
        }
    }
    if sets.is_empty() {
        return Err(Error::BadParameter {
            what: "no interior points; the bounded-set base would be empty".into(),
        });
    }
    let born = BornologyPresentation::new(window.clone(), sets)?;
    if born.non_singletons_form_chain() {
        return Ok((born, false));
    }
    let mut augmented: Vec<PointSet> = born.base().to_vec();
    let mut acc = PointSet::empty(window.len());
    for b in born.base() {
        acc.union_with(b);
        if !augmented.contains(&acc) {
            augmented.push(acc.clone());
        }
    }
    Ok((BornologyPresentation::new(window, augmented)?, true))
}

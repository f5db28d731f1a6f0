//! Recovering a linear order from a two-point selector.
//!
//! A two-point selector induces a tournament on the window: `a` precedes `b`
//! when the selector picks `a` out of `{a, b}`.  On an infinite space a
//! well-behaved selector makes this tournament an honest linear order whose
//! intervals present the bornology; on a finite window we rebuild that order
//! constructively:
//!
//! 1. Seed two *anchor markers* `l` and `r` (by default the two canonically
//!    first points, oriented by the selector) and grow two anchor chains by
//!    a single greedy pass in canonical point order.  A point joins the
//!    right chain when it extends it consistently above `r`, the left chain
//!    when it extends consistently below `l`; otherwise it is set aside.
//! 2. Attach every leftover point to an anchor: to the greatest right
//!    anchor below it when one exists past the first, otherwise to the
//!    least left anchor not below it.  Each anchor's *fiber* is laid out at
//!    the anchor's position in tournament order, so a selector that truly
//!    comes from an order is reconstructed exactly.
//! 3. Decide the case from the bornology.  When the window itself is
//!    covered, any layout works and the fiber layout is used as-is.  When
//!    exactly one chain is covered, the covered side collapses into a
//!    single block (`C`: everything strictly below the whole right chain,
//!    or `D`: everything strictly above the whole left chain) whose
//!    coverage is checked; failure is reported as inconclusive, not as a
//!    refutation, because the block might close off only beyond the window.
//!
//! The derived order carries split markers at the junction of the two
//! sides, so it realizes the two-sided shape whenever the window has at
//! least two points.
//!
//! The construction consults the tournament on pairs that mix arbitrary
//! window points, so the selector must assign every pair it is asked about;
//! selectors produced by [`crate::order::two_selector_from_order`] always
//! qualify.  Partial selectors surface `MissingAssignment` errors.

use std::collections::BTreeMap;

use crate::bornology::BornologyPresentation;
use crate::error::Error;
use crate::hyper::{lift_rows, SubsetUniverse};
use crate::order::LinearOrder;
use crate::point::{PointId, PointSet};
use crate::selector::{check_selector, SelectorCheckReport, SelectorMap};
use crate::space::{discrete_entourage, discrete_from_bornology};
use crate::window::Window;

/// Which side of the window the bornology bounds, as seen from the anchor
/// chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeriveCase {
    /// The whole window is covered; any layout is uniform.
    Bounded,
    /// Neither anchor chain is covered; the window is unbounded on both
    /// sides and the fiber layout is used directly.
    BothSidesUnbounded,
    /// The left chain is covered: everything below the right chain forms a
    /// bounded bottom block.
    LeftSideBounded,
    /// The right chain is covered: everything above the left chain forms a
    /// bounded top block.
    RightSideBounded,
}

impl DeriveCase {
    pub fn as_str(self) -> &'static str {
        match self {
            DeriveCase::Bounded => "bounded",
            DeriveCase::BothSidesUnbounded => "both-sides-unbounded",
            DeriveCase::LeftSideBounded => "left-side-bounded",
            DeriveCase::RightSideBounded => "right-side-bounded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DerivedOrder {
    pub order: LinearOrder,
    pub case: DeriveCase,
    /// The anchor markers that seeded the chains (absent on one-point
    /// windows).
    pub markers: Option<(PointId, PointId)>,
    /// The anchor chain, ascending: left chain then right chain.
    pub anchor: Vec<PointId>,
}

#[derive(Debug, Clone)]
pub enum DeriveOutcome {
    Derived(DerivedOrder),
    /// The selector is not a selector of the discrete space of the
    /// bornology; the check report explains why.
    PreconditionFailed(Box<SelectorCheckReport>),
    /// The window does not determine the order: both anchor chains are
    /// bounded, or a side block is not covered within the window.
    Inconclusive { reason: String },
}

/// Runs the construction with default anchor markers.
pub fn order_from_two_selector(
    f: &SelectorMap,
    born: &BornologyPresentation,
) -> Result<DeriveOutcome, Error> {
    order_from_two_selector_with(f, born, None)
}

/// Runs the construction with explicit anchor markers.  Markers are
/// oriented automatically: the one the selector picks out of the pair goes
/// left.
pub fn order_from_two_selector_with(
    f: &SelectorMap,
    born: &BornologyPresentation,
    markers: Option<(PointId, PointId)>,
) -> Result<DeriveOutcome, Error> {
    let window = born.window().clone();
    let n = window.len();

    let discrete = discrete_from_bornology(born)?;
    let report = check_selector(f, &discrete.presentation, born)?;
    if !report.pass {
        return Ok(DeriveOutcome::PreconditionFailed(Box::new(report)));
    }

    let all = window.all_points();
    if n == 1 {
        return Ok(if born.covered(&all) {
            DeriveOutcome::Derived(DerivedOrder {
                order: LinearOrder::natural(window),
                case: DeriveCase::Bounded,
                markers: None,
                anchor: Vec::new(),
            })
        } else {
            DeriveOutcome::Inconclusive {
                reason: "window has one uncovered point; no anchor markers exist".into(),
            }
        });
    }

    // Seed and orient the markers.
    let (a, b) = match markers {
        Some((a, b)) => {
            if a == b || a.idx() >= n || b.idx() >= n {
                return Err(Error::BadParameter {
                    what: "anchor markers must be two distinct window points".into(),
                });
            }
            (a, b)
        }
        None => (PointId(0), PointId(1)),
    };
    let (l, r) = if f.precedes(&window, a, b)? {
        (a, b)
    } else {
        (b, a)
    };

    // Greedy pass: grow the two anchor chains in canonical point order.
    let mut left: Vec<PointId> = vec![l];
    let mut right: Vec<PointId> = vec![r];
    let mut leftovers: Vec<PointId> = Vec::new();
    for z in window.points() {
        if z == l || z == r {
            continue;
        }
        if extends_right(f, &window, &left, &right, z)? {
            let k = count_below(f, &window, &right, z)?;
            right.insert(k, z);
        } else if extends_left(f, &window, &left, &right, z)? {
            let k = count_below(f, &window, &left, z)?;
            left.insert(k, z);
        } else {
            leftovers.push(z);
        }
    }

    let left_set = PointSet::from_points(n, left.iter().copied());
    let right_set = PointSet::from_points(n, right.iter().copied());
    let left_covered = born.covered(&left_set);
    let right_covered = born.covered(&right_set);
    let window_covered = born.covered(&all);

    if left_covered && right_covered && !window_covered {
        return Ok(DeriveOutcome::Inconclusive {
            reason: format!(
                "both anchor chains are covered ({} and {}) but the window is not; \
                 no side determines the unbounded direction",
                window.render_set(&left_set),
                window.render_set(&right_set)
            ),
        });
    }

    let case = if window_covered {
        DeriveCase::Bounded
    } else if left_covered {
        DeriveCase::LeftSideBounded
    } else if right_covered {
        DeriveCase::RightSideBounded
    } else {
        DeriveCase::BothSidesUnbounded
    };

    let anchor: Vec<PointId> = left.iter().chain(right.iter()).copied().collect();

    let (by_rank, split) = match case {
        DeriveCase::Bounded | DeriveCase::BothSidesUnbounded => {
            fiber_layout(f, &window, &left, &right, &leftovers)?
        }
        DeriveCase::LeftSideBounded => {
            // Bottom block: everything strictly below the whole right chain.
            let mut c = PointSet::empty(n);
            for x in window.points() {
                let mut below_all = true;
                for &y in &right {
                    if x == y || !f.precedes(&window, x, y)? {
                        below_all = false;
                        break;
                    }
                }
                if below_all {
                    c.insert(x);
                }
            }
            if !born.covered(&c) {
                return Ok(DeriveOutcome::Inconclusive {
                    reason: format!(
                        "the bottom block {} is not covered within the window",
                        window.render_set(&c)
                    ),
                });
            }
            bottom_block_layout(f, &window, &c, &right)?
        }
        DeriveCase::RightSideBounded => {
            // Top block: everything strictly above the whole left chain.
            let mut d = PointSet::empty(n);
            for x in window.points() {
                let mut above_all = true;
                for &y in &left {
                    if x == y || !f.precedes(&window, y, x)? {
                        above_all = false;
                        break;
                    }
                }
                if above_all {
                    d.insert(x);
                }
            }
            if !born.covered(&d) {
                return Ok(DeriveOutcome::Inconclusive {
                    reason: format!(
                        "the top block {} is not covered within the window",
                        window.render_set(&d)
                    ),
                });
            }
            top_block_layout(f, &window, &left, &d)?
        }
    };

    let mut order = LinearOrder::new(window.clone(), by_rank)?;
    if let Some((sl, sr)) = split {
        order = order.with_split(sl, sr)?;
    }
    Ok(DeriveOutcome::Derived(DerivedOrder {
        order,
        case,
        markers: Some((l, r)),
        anchor,
    }))
}

/// How many chain members strictly precede `z`.
fn count_below(
    f: &SelectorMap,
    w: &Window,
    chain: &[PointId],
    z: PointId,
) -> Result<usize, Error> {
    let mut k = 0;
    for &y in chain {
        if f.precedes(w, y, z)? {
            k += 1;
        }
    }
    Ok(k)
}

/// Whether the members of `chain` preceding `z` form a prefix, so that `z`
/// can be inserted keeping the chain consistent with the tournament.
fn prefix_consistent(
    f: &SelectorMap,
    w: &Window,
    chain: &[PointId],
    z: PointId,
) -> Result<(usize, bool), Error> {
    let mut k = 0;
    let mut boundary_seen = false;
    let mut consistent = true;
    for &y in chain {
        if f.precedes(w, y, z)? {
            if boundary_seen {
                consistent = false;
                break;
            }
            k += 1;
        } else {
            boundary_seen = true;
        }
    }
    Ok((k, consistent))
}

fn extends_right(
    f: &SelectorMap,
    w: &Window,
    left: &[PointId],
    right: &[PointId],
    z: PointId,
) -> Result<bool, Error> {
    let (k, consistent) = prefix_consistent(f, w, right, z)?;
    if !consistent || k == 0 {
        return Ok(false); // k = 0 would displace the right chain's minimum
    }
    for &x in left {
        if !f.precedes(w, x, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn extends_left(
    f: &SelectorMap,
    w: &Window,
    left: &[PointId],
    right: &[PointId],
    z: PointId,
) -> Result<bool, Error> {
    let (k, consistent) = prefix_consistent(f, w, left, z)?;
    if !consistent || k == left.len() {
        return Ok(false); // k = len would displace the left chain's maximum
    }
    for &y in right {
        if !f.precedes(w, z, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Index of the right anchor a leftover attaches to: the greatest one below
/// it, when that is not the chain minimum.
fn right_anchor(
    f: &SelectorMap,
    w: &Window,
    right: &[PointId],
    z: PointId,
) -> Result<Option<usize>, Error> {
    let mut last_below = None;
    for (j, &y) in right.iter().enumerate() {
        if f.precedes(w, y, z)? {
            last_below = Some(j);
        }
    }
    Ok(last_below)
}

/// Index of the left anchor a leftover attaches to: the least one not below
/// it, or the chain maximum when every left anchor is below.
fn left_anchor(
    f: &SelectorMap,
    w: &Window,
    left: &[PointId],
    z: PointId,
) -> Result<usize, Error> {
    for (s, &x) in left.iter().enumerate() {
        if !f.precedes(w, x, z)? {
            return Ok(s);
        }
    }
    Ok(left.len() - 1)
}

/// Sorts points ascending by how many other members of the slice precede
/// them in the tournament, breaking ties canonically.  On a block where the
/// tournament is transitive this reproduces the tournament exactly; ties
/// only arise on non-transitive blocks, where any layout is coherent.
fn tournament_sort(f: &SelectorMap, w: &Window, points: &mut Vec<PointId>) -> Result<(), Error> {
    let mut keyed: Vec<(usize, PointId)> = Vec::with_capacity(points.len());
    for &z in points.iter() {
        let mut below = 0;
        for &y in points.iter() {
            if y != z && f.precedes(w, y, z)? {
                below += 1;
            }
        }
        keyed.push((below, z));
    }
    keyed.sort();
    points.clear();
    points.extend(keyed.into_iter().map(|(_, z)| z));
    Ok(())
}

/// Lays out anchor fibers: each anchor's block holds the anchor and its
/// attached leftovers in tournament order; the split sits at the junction
/// of the left and right chains.
fn fiber_layout(
    f: &SelectorMap,
    w: &Window,
    left: &[PointId],
    right: &[PointId],
    leftovers: &[PointId],
) -> Result<(Vec<PointId>, Option<(PointId, PointId)>), Error> {
    let total = left.len() + right.len();
    let mut fibers: BTreeMap<usize, Vec<PointId>> = (0..total).map(|i| (i, Vec::new())).collect();
    for &z in leftovers {
        let pos = match right_anchor(f, w, right, z)? {
            Some(i) if i >= 1 => left.len() + i,
            _ => left_anchor(f, w, left, z)?,
        };
        fibers.get_mut(&pos).expect("anchor positions are preset").push(z);
    }
    let mut by_rank = Vec::with_capacity(w.len());
    let mut boundary = 0;
    for (i, &anchor) in left.iter().chain(right.iter()).enumerate() {
        let mut block = fibers.remove(&i).expect("anchor positions are preset");
        block.push(anchor);
        tournament_sort(f, w, &mut block)?;
        by_rank.extend(block);
        if i + 1 == left.len() {
            boundary = by_rank.len();
        }
    }
    let split = split_at(&by_rank, boundary);
    Ok((by_rank, split))
}

/// Lays out a covered bottom block, then the right chain's fibers.
fn bottom_block_layout(
    f: &SelectorMap,
    w: &Window,
    c: &PointSet,
    right: &[PointId],
) -> Result<(Vec<PointId>, Option<(PointId, PointId)>), Error> {
    let mut fibers: BTreeMap<usize, Vec<PointId>> =
        (0..right.len()).map(|i| (i, Vec::new())).collect();
    for z in w.points() {
        if c.contains(z) || right.contains(&z) {
            continue;
        }
        let i = right_anchor(f, w, right, z)?
            .expect("a point outside the bottom block has a right anchor below it");
        fibers.get_mut(&i).expect("anchor positions are preset").push(z);
    }
    let mut by_rank: Vec<PointId> = c.iter().collect();
    tournament_sort(f, w, &mut by_rank)?;
    let boundary = by_rank.len();
    for (i, &anchor) in right.iter().enumerate() {
        let mut block = fibers.remove(&i).expect("anchor positions are preset");
        block.push(anchor);
        tournament_sort(f, w, &mut block)?;
        by_rank.extend(block);
    }
    let split = split_at(&by_rank, boundary);
    Ok((by_rank, split))
}

/// Lays out the left chain's fibers, then a covered top block.
fn top_block_layout(
    f: &SelectorMap,
    w: &Window,
    left: &[PointId],
    d: &PointSet,
) -> Result<(Vec<PointId>, Option<(PointId, PointId)>), Error> {
    let mut fibers: BTreeMap<usize, Vec<PointId>> =
        (0..left.len()).map(|i| (i, Vec::new())).collect();
    for z in w.points() {
        if d.contains(z) || left.contains(&z) {
            continue;
        }
        let t = left_anchor(f, w, left, z)?;
        fibers.get_mut(&t).expect("anchor positions are preset").push(z);
    }
    let mut by_rank = Vec::with_capacity(w.len());
    for (i, &anchor) in left.iter().enumerate() {
        let mut block = fibers.remove(&i).expect("anchor positions are preset");
        block.push(anchor);
        tournament_sort(f, w, &mut block)?;
        by_rank.extend(block);
    }
    let boundary = by_rank.len();
    let mut top: Vec<PointId> = d.iter().collect();
    tournament_sort(f, w, &mut top)?;
    by_rank.extend(top);
    let split = split_at(&by_rank, boundary);
    Ok((by_rank, split))
}

fn split_at(by_rank: &[PointId], boundary: usize) -> Option<(PointId, PointId)> {
    if boundary == 0 || boundary >= by_rank.len() {
        // Every point fell on one side; a two-sided split needs both.
        if by_rank.len() >= 2 {
            return Some((by_rank[0], by_rank[1]));
        }
        return None;
    }
    Some((by_rank[boundary - 1], by_rank[boundary]))
}

/// Outcome of the comparability-bound search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComparabilityBound {
    /// The canonically least base element containing the probe set outside
    /// of which every point compares uniformly with the whole probe set.
    Found {
        base_index: usize,
        /// Whether the bound also works as a discrete modulus: values of
        /// probe-related covered pairs stay related at the bound.
        modulus_ok: bool,
    },
    /// Every candidate has a point that compares both ways; the witness
    /// names the last failure.
    Inconclusive { reason: String },
}

/// Searches the bornology base for the least element `C` containing `b`
/// such that every point outside `C` lies uniformly above or uniformly
/// below all of `b` in the selector's tournament.
pub fn comparability_bound(
    f: &SelectorMap,
    b: &PointSet,
    born: &BornologyPresentation,
) -> Result<ComparabilityBound, Error> {
    let window = born.window();
    if b.is_empty() {
        return Err(Error::BadParameter {
            what: "comparability bound needs a nonempty probe set".into(),
        });
    }
    if b.universe() != window.len() {
        return Err(Error::BadParameter {
            what: "probe set sized for a different window".into(),
        });
    }
    let mut last_failure: Option<(usize, PointId)> = None;
    let mut any_candidate = false;
    'candidates: for (idx, c) in born.base().iter().enumerate() {
        if !b.is_subset(c) {
            continue;
        }
        any_candidate = true;
        for z in window.points() {
            if c.contains(z) {
                continue;
            }
            let mut below = false;
            let mut above = false;
            for x in b.iter() {
                if f.precedes(window, x, z)? {
                    below = true;
                } else {
                    above = true;
                }
                if below && above {
                    last_failure = Some((idx, z));
                    continue 'candidates;
                }
            }
        }
        let modulus_ok = discrete_modulus_ok(f, b, c, born)?;
        return Ok(ComparabilityBound::Found {
            base_index: idx,
            modulus_ok,
        });
    }
    let reason = match last_failure {
        Some((idx, z)) => format!(
            "every candidate fails; at base element {} the point {} compares both ways with {}",
            window.render_set(&born.base()[idx]),
            window.label(z),
            window.render_set(b)
        ),
        None if !any_candidate => format!(
            "no base element contains {}",
            window.render_set(b)
        ),
        None => unreachable!("a candidate either succeeds or records a failure"),
    };
    Ok(ComparabilityBound::Inconclusive { reason })
}

/// Checks that values of covered pairs related at the probe set's relation
/// stay related at the candidate's relation.
fn discrete_modulus_ok(
    f: &SelectorMap,
    b: &PointSet,
    c: &PointSet,
    born: &BornologyPresentation,
) -> Result<bool, Error> {
    let window = born.window();
    let universe = SubsetUniverse::covered_pairs(born);
    let eb = discrete_entourage(window, b);
    let ec = discrete_entourage(window, c);
    let rows = lift_rows(&eb, &universe);
    let mut values = Vec::with_capacity(universe.len());
    for p in universe.elements() {
        match f.get(p) {
            Some(v) => values.push(v),
            None => {
                return Err(Error::MissingAssignment {
                    subset: window.render_set(p),
                })
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        for j in row.iter() {
            if !ec.contains(values[i], values[j.idx()]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bornology::covered_family_difference;
    use crate::order::{
        interval_bornology, ordinal_sum_shape, two_selector_from_order, LinearOrder,
    };

    fn set(universe: usize, elems: &[u32]) -> PointSet {
        PointSet::from_points(universe, elems.iter().map(|&e| PointId(e)))
    }

    fn window(n: usize) -> Arc<Window> {
        Window::new((0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    fn order_of(w: &Arc<Window>, ranks: &[u32]) -> LinearOrder {
        LinearOrder::new(w.clone(), ranks.iter().map(|&r| PointId(r)).collect()).unwrap()
    }

    fn width_two_intervals(w: &Arc<Window>) -> BornologyPresentation {
        let n = w.len();
        BornologyPresentation::new(
            w.clone(),
            (0..n as u32 - 1).map(|i| set(n, &[i, i + 1])).collect(),
        )
        .unwrap()
    }

    fn derived(outcome: DeriveOutcome) -> DerivedOrder {
        match outcome {
            DeriveOutcome::Derived(d) => d,
            other => panic!("expected a derived order, got {other:?}"),
        }
    }

    #[test]
    fn bounded_case_preserves_the_covered_family() {
        let w = window(4);
        let o = order_of(&w, &[2, 0, 3, 1]);
        let born = interval_bornology(&o);
        let f = two_selector_from_order(&o);
        let d = derived(order_from_two_selector(&f, &born).unwrap());
        assert_eq!(d.case, DeriveCase::Bounded);
        assert!(ordinal_sum_shape(&d.order));
        let diff =
            covered_family_difference(&born, &interval_bornology(&d.order), &w.all_points())
                .unwrap();
        assert_eq!(diff, None);
    }

    #[test]
    fn ascending_chain_yields_the_natural_order() {
        let w = window(6);
        let born = width_two_intervals(&w);
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()));
        let d = derived(order_from_two_selector(&f, &born).unwrap());
        assert_eq!(d.case, DeriveCase::LeftSideBounded);
        let ranks: Vec<u32> = d.order.by_rank().iter().map(|p| p.0).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(d.order.split(), Some((PointId(0), PointId(1))));
        assert!(ordinal_sum_shape(&d.order));
    }

    #[test]
    fn reversing_the_selector_reverses_the_order() {
        let w = window(6);
        let born = width_two_intervals(&w);
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()).reversed());
        let d = derived(order_from_two_selector(&f, &born).unwrap());
        assert_eq!(d.case, DeriveCase::RightSideBounded);
        let ranks: Vec<u32> = d.order.by_rank().iter().map(|p| p.0).collect();
        assert_eq!(ranks, vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(d.order.split(), Some((PointId(1), PointId(0))));
    }

    #[test]
    fn sandwiched_points_fall_into_the_left_fiber() {
        // Seeding the anchors apart leaves the points between them for the
        // fiber step, which attaches them next to the left marker.
        let w = window(6);
        let o = LinearOrder::natural(w.clone());
        let born = interval_bornology(&o);
        let f = two_selector_from_order(&o);
        let d = derived(
            order_from_two_selector_with(&f, &born, Some((PointId(1), PointId(4)))).unwrap(),
        );
        assert_eq!(d.case, DeriveCase::Bounded);
        assert_eq!(d.markers, Some((PointId(1), PointId(4))));
        let ranks: Vec<u32> = d.order.by_rank().iter().map(|p| p.0).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(d.order.split(), Some((PointId(3), PointId(4))));
        let anchor: Vec<u32> = d.anchor.iter().map(|p| p.0).collect();
        assert_eq!(anchor, vec![0, 1, 4, 5]);
    }

    #[test]
    fn unbounded_both_sides_keeps_fibers_between_chains() {
        let w = window(8);
        let born = BornologyPresentation::new(
            w.clone(),
            vec![set(8, &[1, 2]), set(8, &[5, 6])],
        )
        .unwrap();
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()));
        let d = derived(
            order_from_two_selector_with(&f, &born, Some((PointId(2), PointId(5)))).unwrap(),
        );
        assert_eq!(d.case, DeriveCase::BothSidesUnbounded);
        let ranks: Vec<u32> = d.order.by_rank().iter().map(|p| p.0).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(d.order.split(), Some((PointId(4), PointId(5))));
    }

    #[test]
    fn markers_orient_themselves() {
        let w = window(4);
        let o = LinearOrder::natural(w.clone());
        let born = interval_bornology(&o);
        let f = two_selector_from_order(&o);
        let fwd = derived(
            order_from_two_selector_with(&f, &born, Some((PointId(1), PointId(2)))).unwrap(),
        );
        let rev = derived(
            order_from_two_selector_with(&f, &born, Some((PointId(2), PointId(1)))).unwrap(),
        );
        assert_eq!(fwd.markers, rev.markers);
        assert_eq!(fwd.order.by_rank(), rev.order.by_rank());
    }

    #[test]
    fn bounded_anchors_without_bounded_window_are_inconclusive() {
        let w = window(6);
        let born = BornologyPresentation::new(
            w.clone(),
            vec![set(6, &[0, 1, 2]), set(6, &[3, 4, 5])],
        )
        .unwrap();
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()));
        let out =
            order_from_two_selector_with(&f, &born, Some((PointId(2), PointId(3)))).unwrap();
        assert!(matches!(out, DeriveOutcome::Inconclusive { .. }), "{out:?}");
    }

    #[test]
    fn uncovered_bottom_block_is_inconclusive() {
        // The left chain is covered, but the bottom block it generates
        // reaches beyond every base element.
        let w = window(6);
        let born = BornologyPresentation::new(w.clone(), vec![set(6, &[0, 1])]).unwrap();
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()));
        let out =
            order_from_two_selector_with(&f, &born, Some((PointId(1), PointId(4)))).unwrap();
        match out {
            DeriveOutcome::Inconclusive { reason } => {
                assert!(reason.contains("bottom block"), "{reason}");
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn choice_violations_fail_the_precondition() {
        let w = window(3);
        let o = LinearOrder::natural(w.clone());
        let born = interval_bornology(&o);
        let mut f = two_selector_from_order(&o);
        f.insert(set(3, &[0, 1]), PointId(2)); // not a member
        let out = order_from_two_selector(&f, &born).unwrap();
        match out {
            DeriveOutcome::PreconditionFailed(report) => {
                assert_eq!(report.choice_violations.len(), 1);
            }
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn partial_selectors_surface_missing_assignments() {
        let w = window(3);
        let born = BornologyPresentation::new(w.clone(), vec![set(3, &[0, 1])]).unwrap();
        let mut f = SelectorMap::new(crate::selector::SelectorDomain::TwoSubsets);
        f.insert(set(3, &[0, 1]), PointId(0));
        // The pair {0,2} is never assigned, and the greedy pass needs it.
        let err = order_from_two_selector(&f, &born).unwrap_err();
        assert!(matches!(err, Error::MissingAssignment { .. }));
    }

    #[test]
    fn one_point_windows_are_bounded_when_covered() {
        let w = window(1);
        let born = BornologyPresentation::new(w.clone(), vec![set(1, &[0])]).unwrap();
        let f = SelectorMap::new(crate::selector::SelectorDomain::TwoSubsets);
        let d = derived(order_from_two_selector(&f, &born).unwrap());
        assert_eq!(d.case, DeriveCase::Bounded);
        assert_eq!(d.order.split(), None);
    }

    #[test]
    fn comparability_bound_on_a_chain_is_immediate() {
        let w = window(6);
        let born = width_two_intervals(&w);
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()));
        let out = comparability_bound(&f, &set(6, &[2, 3]), &born).unwrap();
        assert_eq!(
            out,
            ComparabilityBound::Found {
                base_index: 2,
                modulus_ok: true
            }
        );
    }

    #[test]
    fn comparability_bound_grows_past_mixed_points() {
        let w = window(4);
        let born = BornologyPresentation::new(
            w.clone(),
            vec![set(4, &[0, 1]), set(4, &[0, 1, 2, 3])],
        )
        .unwrap();
        // 2 compares both ways with {0,1}; only the full element works.
        let o = order_of(&w, &[0, 2, 1, 3]);
        let f = two_selector_from_order(&o);
        let out = comparability_bound(&f, &set(4, &[0, 1]), &born).unwrap();
        assert!(matches!(
            out,
            ComparabilityBound::Found { base_index: 1, .. }
        ));
    }

    #[test]
    fn comparability_bound_reports_the_failing_point() {
        let w = window(4);
        let born = BornologyPresentation::new(
            w.clone(),
            vec![set(4, &[0, 1]), set(4, &[0, 1, 2])],
        )
        .unwrap();
        let o = order_of(&w, &[0, 3, 1, 2]);
        let f = two_selector_from_order(&o);
        let out = comparability_bound(&f, &set(4, &[0, 1]), &born).unwrap();
        match out {
            ComparabilityBound::Inconclusive { reason } => {
                assert!(reason.contains("compares both ways"), "{reason}");
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn comparability_bound_needs_a_containing_candidate() {
        let w = window(3);
        let born = BornologyPresentation::new(w.clone(), vec![set(3, &[0, 1])]).unwrap();
        let f = two_selector_from_order(&LinearOrder::natural(w.clone()));
        let out = comparability_bound(&f, &set(3, &[1, 2]), &born).unwrap();
        match out {
            ComparabilityBound::Inconclusive { reason } => {
                assert!(reason.contains("no base element"), "{reason}");
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }
}

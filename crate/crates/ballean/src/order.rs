//! Linear orders on windows and the constructions that turn them into
//! bornologies and selectors.
//!
//! An order may carry *split markers* `(l, r)`: two adjacent points dividing
//! the window into a left part (everything up to `l`) and a right part (from
//! `r` on).  The split is the shape a two-sided order needs for the interval
//! selector: on the left part the selector takes maxima, on the right part
//! minima, so that the chosen point of every interval hugs the split from
//! whichever side the interval meets it.

use std::sync::Arc;

use crate::bornology::BornologyPresentation;
use crate::error::Error;
use crate::point::{PointId, PointSet};
use crate::selector::{SelectorDomain, SelectorMap};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    window: Arc<Window>,
    /// Points listed from least to greatest.
    by_rank: Vec<PointId>,
    /// Inverse of `by_rank`.
    rank_of: Vec<u32>,
    split: Option<(PointId, PointId)>,
}

impl LinearOrder {
    pub fn new(window: Arc<Window>, by_rank: Vec<PointId>) -> Result<Self, Error> {
        let n = window.len();
        if by_rank.len() != n {
            return Err(Error::BadParameter {
                what: format!("order lists {} of {} points", by_rank.len(), n),
            });
        }
        let mut rank_of = vec![u32::MAX; n];
        for (r, p) in by_rank.iter().enumerate() {
            if p.idx() >= n {
                return Err(Error::UnknownPoint {
                    detail: format!("{p}"),
                });
            }
            if rank_of[p.idx()] != u32::MAX {
                return Err(Error::BadParameter {
                    what: format!("point {} listed twice in order", window.label(*p)),
                });
            }
            rank_of[p.idx()] = r as u32;
        }
        Ok(LinearOrder {
            window,
            by_rank,
            rank_of,
            split: None,
        })
    }

    /// The canonical order: points in window enumeration order.
    pub fn natural(window: Arc<Window>) -> Self {
        let by_rank: Vec<PointId> = window.points().collect();
        let rank_of = (0..window.len() as u32).collect();
        LinearOrder {
            window,
            by_rank,
            rank_of,
            split: None,
        }
    }

    /// Attaches split markers; `l` must immediately precede `r`.
    pub fn with_split(mut self, l: PointId, r: PointId) -> Result<Self, Error> {
        if l == r {
            return Err(Error::InvalidSplit {
                detail: "markers must be distinct".into(),
            });
        }
        let rl = self.rank(l);
        let rr = self.rank(r);
        if rl + 1 != rr {
            return Err(Error::InvalidSplit {
                detail: format!(
                    "{} has rank {rl} and {} has rank {rr}; markers must be adjacent",
                    self.window.label(l),
                    self.window.label(r)
                ),
            });
        }
        self.split = Some((l, r));
        Ok(self)
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }

    pub fn by_rank(&self) -> &[PointId] {
        &self.by_rank
    }

    pub fn rank(&self, p: PointId) -> u32 {
        self.rank_of[p.idx()]
    }

    pub fn at_rank(&self, r: usize) -> PointId {
        self.by_rank[r]
    }

    pub fn le(&self, a: PointId, b: PointId) -> bool {
        self.rank(a) <= self.rank(b)
    }

    pub fn split(&self) -> Option<(PointId, PointId)> {
        self.split
    }

    /// The closed interval from `a` to `b`; `a` must not exceed `b`.
    pub fn interval(&self, a: PointId, b: PointId) -> Result<PointSet, Error> {
        let (ra, rb) = (self.rank(a) as usize, self.rank(b) as usize);
        if ra > rb {
            return Err(Error::BadParameter {
                what: format!(
                    "interval endpoints out of order: {} exceeds {}",
                    self.window.label(a),
                    self.window.label(b)
                ),
            });
        }
        Ok(PointSet::from_points(
            self.window.len(),
            self.by_rank[ra..=rb].iter().copied(),
        ))
    }

    pub fn min_of(&self, s: &PointSet) -> Option<PointId> {
        s.iter().min_by_key(|&p| self.rank(p))
    }

    pub fn max_of(&self, s: &PointSet) -> Option<PointId> {
        s.iter().max_by_key(|&p| self.rank(p))
    }

    /// Everything up to and including the left marker.
    pub fn left_part(&self) -> Result<PointSet, Error> {
        let (l, _) = self.split.ok_or(Error::MissingSplit)?;
        self.interval(self.by_rank[0], l)
    }

    /// Everything from the right marker on.
    pub fn right_part(&self) -> Result<PointSet, Error> {
        let (_, r) = self.split.ok_or(Error::MissingSplit)?;
        self.interval(r, self.by_rank[self.len() - 1])
    }

    /// The reversed order; split markers swap roles.
    pub fn reversed(&self) -> Self {
        let by_rank: Vec<PointId> = self.by_rank.iter().rev().copied().collect();
        let n = self.len() as u32;
        let rank_of = self.rank_of.iter().map(|&r| n - 1 - r).collect();
        LinearOrder {
            window: self.window.clone(),
            by_rank,
            rank_of,
            split: self.split.map(|(l, r)| (r, l)),
        }
    }
}

/// The bornology presented by all closed intervals of the order (including
/// singletons as one-point intervals).
pub fn interval_bornology(order: &LinearOrder) -> BornologyPresentation {
    let n = order.len();
    let mut base = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            base.push(PointSet::from_points(
                n,
                order.by_rank()[a..=b].iter().copied(),
            ));
        }
    }
    BornologyPresentation::new(order.window().clone(), base)
        .expect("intervals are nonempty subsets of the window")
}

/// The two-point selector induced by an order: each pair maps to its lesser
/// member.
pub fn two_selector_from_order(order: &LinearOrder) -> SelectorMap {
    let n = order.len();
    let mut s = SelectorMap::new(SelectorDomain::TwoSubsets);
    for i in 0..n as u32 {
        for j in (i + 1)..n as u32 {
            let pair = PointSet::from_points(n, [PointId(i), PointId(j)]);
            let v = if order.le(PointId(i), PointId(j)) {
                PointId(i)
            } else {
                PointId(j)
            };
            s.insert(pair, v);
        }
    }
    s
}

/// The interval selector of a split order, defined on every nonempty subset
/// (all of which the interval bornology covers): take the greatest member of
/// the left part if the subset meets it, otherwise the least member of the
/// right part.
pub fn selector_from_split_order(order: &LinearOrder) -> Result<SelectorMap, Error> {
    let n = order.len();
    if n > 20 {
        return Err(Error::DomainTooLarge {
            what: "interval-selector domain",
            size: n,
            limit: 20,
        });
    }
    let left = order.left_part()?;
    let mut s = SelectorMap::new(SelectorDomain::CoveredSubsets);
    for mask in 1u32..(1u32 << n) {
        let subset = PointSet::from_points(
            n,
            (0..n as u32).filter(|i| mask & (1 << i) != 0).map(PointId),
        );
        let meet_left = subset.intersection(&left);
        let v = if meet_left.is_empty() {
            order.min_of(&subset).expect("subset is nonempty")
        } else {
            order.max_of(&meet_left).expect("intersection is nonempty")
        };
        s.insert(subset, v);
    }
    Ok(s)
}

/// Whether the order realizes the two-sided shape: split markers exist, are
/// adjacent, and their parts partition the window.
pub fn ordinal_sum_shape(order: &LinearOrder) -> bool {
    match order.split() {
        None => false,
        Some((l, r)) => {
            if order.rank(l) + 1 != order.rank(r) {
                return false;
            }
            let left = order.left_part().expect("split is present");
            let right = order.right_part().expect("split is present");
            left.is_disjoint(&right)
                && left.union(&right) == order.window().all_points()
        }
    }
}

/// A strictly increasing chain of subsets, with an enumeration of each
/// successive difference.  Segment 0 enumerates the bottom level; segment
/// `i` enumerates `levels[i]` minus `levels[i-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBase {
    window: Arc<Window>,
    levels: Vec<PointSet>,
    segments: Vec<Vec<PointId>>,
}

impl ChainBase {
    /// Builds a chain base with explicit difference enumerations.
    pub fn new(
        window: Arc<Window>,
        levels: Vec<PointSet>,
        segments: Vec<Vec<PointId>>,
    ) -> Result<Self, Error> {
        if levels.is_empty() {
            return Err(Error::BadParameter {
                what: "chain must have at least one level".into(),
            });
        }
        if levels.iter().any(|l| l.universe() != window.len()) {
            return Err(Error::BadParameter {
                what: "chain level sized for a different window".into(),
            });
        }
        if levels[0].is_empty() {
            return Err(Error::EmptyBaseElement);
        }
        for (i, pair) in levels.windows(2).enumerate() {
            if !(pair[0].is_subset(&pair[1]) && pair[0] != pair[1]) {
                return Err(Error::NonStrictChain { position: i + 1 });
            }
        }
        if segments.len() != levels.len() {
            return Err(Error::BadParameter {
                what: format!(
                    "{} segments for {} levels",
                    segments.len(),
                    levels.len()
                ),
            });
        }
        for (i, seg) in segments.iter().enumerate() {
            let expect = if i == 0 {
                levels[0].clone()
            } else {
                levels[i].difference(&levels[i - 1])
            };
            let got = PointSet::from_points(window.len(), seg.iter().copied());
            if got != expect || seg.len() != expect.len() {
                return Err(Error::BadParameter {
                    what: format!("segment {i} does not enumerate its chain difference"),
                });
            }
        }
        Ok(ChainBase {
            window,
            levels,
            segments,
        })
    }

    /// Builds a chain base whose differences are enumerated canonically.
    pub fn from_levels(window: Arc<Window>, levels: Vec<PointSet>) -> Result<Self, Error> {
        let segments = levels
            .iter()
            .enumerate()
            .map(|(i, level)| {
                let diff = if i == 0 {
                    level.clone()
                } else {
                    level.difference(&levels[i - 1])
                };
                diff.iter().collect()
            })
            .collect();
        Self::new(window, levels, segments)
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn levels(&self) -> &[PointSet] {
        &self.levels
    }

    pub fn segments(&self) -> &[Vec<PointId>] {
        &self.segments
    }

    /// The bornology presented by the chain levels themselves.
    pub fn bornology(&self) -> BornologyPresentation {
        BornologyPresentation::new(self.window.clone(), self.levels.clone())
            .expect("chain levels are nonempty subsets")
    }
}

/// Lays the chain out as a linear order whose intervals cover exactly what
/// the chain covers: the bottom level first, then each difference in turn.
/// Every level becomes an initial interval of the resulting order.  The
/// chain must exhaust the window, otherwise points beyond the top level
/// would have no rank.
pub fn interval_base_from_chain(chain: &ChainBase) -> Result<LinearOrder, Error> {
    let window = chain.window();
    let top = chain.levels().last().expect("chain is nonempty");
    let all = window.all_points();
    if *top != all {
        let missing = all.difference(top);
        return Err(Error::ChainDoesNotCoverWindow {
            missing: window.render_set(&missing),
        });
    }
    let mut by_rank = Vec::with_capacity(window.len());
    for seg in chain.segments() {
        by_rank.extend_from_slice(seg);
    }
    LinearOrder::new(window.clone(), by_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bornology::covered_family_difference;

    fn set(universe: usize, elems: &[u32]) -> PointSet {
        PointSet::from_points(universe, elems.iter().map(|&e| PointId(e)))
    }

    fn window(n: usize) -> Arc<Window> {
        Window::new((0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    fn order_of(window: &Arc<Window>, ranks: &[u32]) -> LinearOrder {
        LinearOrder::new(
            window.clone(),
            ranks.iter().map(|&r| PointId(r)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn order_validates_permutations() {
        let w = window(3);
        assert!(LinearOrder::new(w.clone(), vec![PointId(0), PointId(0), PointId(1)]).is_err());
        assert!(LinearOrder::new(w.clone(), vec![PointId(0)]).is_err());
        let o = order_of(&w, &[2, 0, 1]);
        assert_eq!(o.rank(PointId(2)), 0);
        assert!(o.le(PointId(0), PointId(1)));
        assert!(!o.le(PointId(1), PointId(2)));
    }

    #[test]
    fn interval_endpoints_must_ascend() {
        let w = window(4);
        let o = order_of(&w, &[3, 1, 0, 2]);
        let i = o.interval(PointId(1), PointId(2)).unwrap();
        assert_eq!(i, set(4, &[0, 1, 2]));
        assert!(o.interval(PointId(2), PointId(1)).is_err());
    }

    #[test]
    fn split_markers_must_be_adjacent() {
        let w = window(4);
        let o = order_of(&w, &[0, 1, 2, 3]);
        assert!(o.clone().with_split(PointId(0), PointId(2)).is_err());
        assert!(o.clone().with_split(PointId(2), PointId(1)).is_err());
        let o = o.with_split(PointId(1), PointId(2)).unwrap();
        assert_eq!(o.left_part().unwrap(), set(4, &[0, 1]));
        assert_eq!(o.right_part().unwrap(), set(4, &[2, 3]));
        assert!(ordinal_sum_shape(&o));
    }

    #[test]
    fn missing_split_is_not_two_sided() {
        let w = window(3);
        assert!(!ordinal_sum_shape(&order_of(&w, &[0, 1, 2])));
    }

    #[test]
    fn interval_bornology_covers_exactly_the_intervals() {
        let w = window(4);
        let o = order_of(&w, &[2, 0, 3, 1]);
        let born = interval_bornology(&o);
        // {2,0} is the interval of ranks 0..=1; {0,3} of ranks 1..=2.
        assert!(born.covered(&set(4, &[0, 2])));
        assert!(born.covered(&set(4, &[0, 3])));
        assert!(born.covered(&w.all_points()));
        // {2,3} spans ranks 0..=2 but omits rank 1, so no interval equals
        // it; it is still covered by the larger interval {2,0,3}.
        assert!(born.covered(&set(4, &[2, 3])));
        assert_eq!(born.base().len(), 10);
    }

    #[test]
    fn two_selector_picks_the_lesser_member() {
        let w = window(3);
        let o = order_of(&w, &[1, 2, 0]);
        let s = two_selector_from_order(&o);
        assert_eq!(s.get(&set(3, &[0, 1])), Some(PointId(1)));
        assert_eq!(s.get(&set(3, &[0, 2])), Some(PointId(2)));
        assert_eq!(s.get(&set(3, &[1, 2])), Some(PointId(1)));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn reversing_the_order_swaps_every_choice() {
        let w = window(4);
        let o = order_of(&w, &[2, 0, 3, 1]);
        let s = two_selector_from_order(&o);
        let t = two_selector_from_order(&o.reversed());
        for (pair, &v) in &s.assignment {
            let w_rev = t.get(pair).unwrap();
            assert_ne!(v, w_rev);
            assert!(pair.contains(v) && pair.contains(w_rev));
        }
    }

    #[test]
    fn interval_selector_hugs_the_split() {
        let w = window(4);
        let o = order_of(&w, &[0, 1, 2, 3])
            .with_split(PointId(1), PointId(2))
            .unwrap();
        let s = selector_from_split_order(&o).unwrap();
        // Meets the left part: greatest member of the intersection.
        assert_eq!(s.get(&set(4, &[0, 1, 3])), Some(PointId(1)));
        assert_eq!(s.get(&set(4, &[0, 3])), Some(PointId(0)));
        // Misses the left part: least member.
        assert_eq!(s.get(&set(4, &[2, 3])), Some(PointId(2)));
        assert_eq!(s.get(&set(4, &[3])), Some(PointId(3)));
        assert_eq!(s.len(), 15);
    }

    #[test]
    fn interval_selector_requires_a_split() {
        let w = window(3);
        let o = order_of(&w, &[0, 1, 2]);
        assert!(matches!(
            selector_from_split_order(&o),
            Err(Error::MissingSplit)
        ));
    }

    #[test]
    fn chain_base_rejects_non_strict_chains() {
        let w = window(3);
        let err = ChainBase::from_levels(
            w.clone(),
            vec![set(3, &[0, 1]), set(3, &[0, 1])],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonStrictChain { position: 1 });
        let err = ChainBase::from_levels(w, vec![set(3, &[0, 1]), set(3, &[2])]).unwrap_err();
        assert_eq!(err, Error::NonStrictChain { position: 1 });
    }

    #[test]
    fn chain_segments_must_enumerate_differences() {
        let w = window(3);
        let err = ChainBase::new(
            w,
            vec![set(3, &[0]), set(3, &[0, 1, 2])],
            vec![vec![PointId(0)], vec![PointId(1), PointId(1)]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadParameter { .. }));
    }

    #[test]
    fn chain_order_lays_out_segments_in_turn() {
        let w = window(5);
        let chain = ChainBase::new(
            w.clone(),
            vec![set(5, &[2, 3]), set(5, &[1, 2, 3]), set(5, &[0, 1, 2, 3, 4])],
            vec![
                vec![PointId(3), PointId(2)],
                vec![PointId(1)],
                vec![PointId(4), PointId(0)],
            ],
        )
        .unwrap();
        let o = interval_base_from_chain(&chain).unwrap();
        let ranks: Vec<u32> = o.by_rank().iter().map(|p| p.0).collect();
        assert_eq!(ranks, vec![3, 2, 1, 4, 0]);
        // Every chain level is an initial interval of the derived order.
        for level in chain.levels() {
            let initial = o
                .interval(o.at_rank(0), o.at_rank(level.len() - 1))
                .unwrap();
            assert_eq!(&initial, level);
        }
    }

    #[test]
    fn chain_must_cover_the_window() {
        let w = window(4);
        let chain =
            ChainBase::from_levels(w, vec![set(4, &[1]), set(4, &[1, 2])]).unwrap();
        let err = interval_base_from_chain(&chain).unwrap_err();
        assert_eq!(
            err,
            Error::ChainDoesNotCoverWindow {
                missing: "{0,3}".to_string()
            }
        );
    }

    #[test]
    fn chain_coverage_equals_interval_coverage() {
        let w = window(5);
        let chain = ChainBase::from_levels(
            w.clone(),
            vec![set(5, &[1, 2]), set(5, &[1, 2, 4]), set(5, &[0, 1, 2, 3, 4])],
        )
        .unwrap();
        let o = interval_base_from_chain(&chain).unwrap();
        let derived = interval_bornology(&o);
        let diff =
            covered_family_difference(&chain.bornology(), &derived, &w.all_points()).unwrap();
        // The chain covers fewer sets than all intervals of the derived
        // order: every chain level is an interval, but not conversely.
        // Coverage agreement is one-sided by construction.
        for subset_mask in 1u32..(1 << 5) {
            let s = PointSet::from_points(
                5,
                (0..5u32).filter(|i| subset_mask & (1 << i) != 0).map(PointId),
            );
            if chain.bornology().covered(&s) {
                assert!(derived.covered(&s), "chain covers {s:?} but intervals do not");
            }
        }
        // And on this chain the families agree exactly.
        assert_eq!(diff, None);
    }
}

//! Hyperballeans: entourage structure lifted to families of bounded subsets.
//!
//! Two subsets are related at a scale when each is contained in the ball of
//! the other, so every lifted relation is symmetric by construction.  The
//! lift is computed over an explicit universe of subsets (all covered
//! nonempty subsets, or just the covered two-point subsets), listed in
//! canonical order.

use crate::bornology::BornologyPresentation;
use crate::entourage::Entourage;
use crate::error::Error;
use crate::point::PointSet;

/// A fixed, canonically ordered family of subsets serving as the point set
/// of a lifted relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetUniverse {
    elements: Vec<PointSet>,
}

impl SubsetUniverse {
    pub fn new(elements: Vec<PointSet>) -> Self {
        debug_assert!(elements.windows(2).all(|p| p[0] < p[1]));
        SubsetUniverse { elements }
    }

    /// All nonempty covered subsets of the bornology.
    pub fn covered(born: &BornologyPresentation) -> Result<Self, Error> {
        Ok(SubsetUniverse::new(born.covered_subsets()?))
    }

    /// All covered two-point subsets of the bornology.
    pub fn covered_pairs(born: &BornologyPresentation) -> Self {
        SubsetUniverse::new(born.covered_pairs())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &PointSet {
        &self.elements[i]
    }

    pub fn position(&self, s: &PointSet) -> Option<usize> {
        self.elements.binary_search(s).ok()
    }
}

/// A lifted relation over a subset universe.  `rows[i]` holds the indices of
/// universe elements related to element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperEntourage {
    universe: SubsetUniverse,
    rows: Vec<PointSet>,
}

impl HyperEntourage {
    pub fn universe(&self) -> &SubsetUniverse {
        &self.universe
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(crate::point::PointId(j as u32))
    }

    pub fn row(&self, i: usize) -> &PointSet {
        &self.rows[i]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.universe.len()).all(|i| {
            self.rows[i]
                .iter()
                .all(|j| self.contains(j.idx(), i))
        })
    }
}

/// Relation rows of the lift of `e` over an explicit universe: `A` and `B`
/// are related when `A` is inside `e[B]` and `B` is inside `e[A]`.
pub fn lift_rows(e: &Entourage, universe: &SubsetUniverse) -> Vec<PointSet> {
    let m = universe.len();
    let balls: Vec<PointSet> = universe.elements().iter().map(|a| e.ball(a)).collect();
    let mut rows = vec![PointSet::empty(m); m];
    for i in 0..m {
        for j in i..m {
            if universe.get(i).is_subset(&balls[j]) && universe.get(j).is_subset(&balls[i]) {
                rows[i].insert(crate::point::PointId(j as u32));
                rows[j].insert(crate::point::PointId(i as u32));
            }
        }
    }
    rows
}

/// The lift of `e` over all nonempty covered subsets of `born`.
pub fn hyper(e: &Entourage, born: &BornologyPresentation) -> Result<HyperEntourage, Error> {
    if !e.window().same_as(born.window()) {
        return Err(Error::WindowMismatch { context: "hyper" });
    }
    let universe = SubsetUniverse::covered(born)?;
    let rows = lift_rows(e, &universe);
    Ok(HyperEntourage { universe, rows })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::point::PointId;
    use crate::window::Window;

    fn set(universe: usize, elems: &[u32]) -> PointSet {
        PointSet::from_points(universe, elems.iter().map(|&e| PointId(e)))
    }

    fn window(n: usize) -> Arc<Window> {
        Window::new((0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    /// Direct two-sided containment oracle on explicit sets.
    fn related_oracle(e: &Entourage, a: &PointSet, b: &PointSet) -> bool {
        a.is_subset(&e.ball(b)) && b.is_subset(&e.ball(a))
    }

    #[test]
    fn lift_matches_direct_containment_oracle() {
        let w = window(4);
        let e = Entourage::diagonal(w.clone())
            .with_sym_pair(PointId(0), PointId(1))
            .with_sym_pair(PointId(1), PointId(2))
            .with_pair(PointId(3), PointId(2));
        let born = BornologyPresentation::new(
            w.clone(),
            vec![set(4, &[0, 1, 2]), set(4, &[2, 3])],
        )
        .unwrap();
        let h = hyper(&e, &born).unwrap();
        for i in 0..h.universe().len() {
            for j in 0..h.universe().len() {
                assert_eq!(
                    h.contains(i, j),
                    related_oracle(&e, h.universe().get(i), h.universe().get(j)),
                    "disagreement at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn lift_is_symmetric_even_for_asymmetric_input() {
        let w = window(3);
        let e = Entourage::diagonal(w.clone()).with_pair(PointId(0), PointId(1));
        let born = BornologyPresentation::new(w, vec![set(3, &[0, 1, 2])]).unwrap();
        let h = hyper(&e, &born).unwrap();
        assert!(h.is_symmetric());
    }

    #[test]
    fn singleton_rows_recover_the_symmetric_core() {
        let w = window(3);
        let e = Entourage::diagonal(w.clone())
            .with_pair(PointId(0), PointId(1))
            .with_pair(PointId(1), PointId(0))
            .with_pair(PointId(1), PointId(2));
        let born = BornologyPresentation::new(w.clone(), vec![set(3, &[0, 1, 2])]).unwrap();
        let h = hyper(&e, &born).unwrap();
        let core = e.symmetric_core();
        for x in 0..3u32 {
            for y in 0..3u32 {
                let i = h
                    .universe()
                    .position(&PointSet::singleton(3, PointId(x)))
                    .unwrap();
                let j = h
                    .universe()
                    .position(&PointSet::singleton(3, PointId(y)))
                    .unwrap();
                assert_eq!(h.contains(i, j), core.contains(PointId(x), PointId(y)));
            }
        }
    }

    #[test]
    fn lift_is_monotone_in_the_entourage() {
        let w = window(4);
        let small = Entourage::diagonal(w.clone()).with_sym_pair(PointId(0), PointId(1));
        let big = small.clone().with_sym_pair(PointId(1), PointId(2));
        let born = BornologyPresentation::new(w, vec![set(4, &[0, 1, 2, 3])]).unwrap();
        let hs = hyper(&small, &born).unwrap();
        let hb = hyper(&big, &born).unwrap();
        for i in 0..hs.universe().len() {
            assert!(hs.row(i).is_subset(hb.row(i)));
        }
    }

    #[test]
    fn universe_respects_coverage() {
        let w = window(3);
        let born = BornologyPresentation::new(w.clone(), vec![set(3, &[0, 1])]).unwrap();
        let e = Entourage::full(w);
        let h = hyper(&e, &born).unwrap();
        // {2} and {0,1,2} are not covered, so they are not universe points.
        assert_eq!(h.universe().len(), 3);
        assert!(h
            .universe()
            .position(&PointSet::singleton(3, PointId(2)))
            .is_none());
    }
}

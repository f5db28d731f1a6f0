//! Points and subsets of a finite window.
//!
//! Subsets are dense bit sets with a fixed universe size.  Their `Ord`
//! instance is the canonical subset order used everywhere for tie-breaking
//! and report layout: first by cardinality, then lexicographically on the
//! ascending list of members.

use std::cmp::Ordering;
use std::fmt;

/// Index of a point within its window's canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub u32);

impl PointId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

const BITS: usize = 64;

/// A subset of a fixed finite universe, stored as a bit set.
///
/// Binary operations require both operands to have the same universe size
/// and panic otherwise; mixing universes is a programming error, not a
/// recoverable condition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            universe,
            blocks: vec![0; universe.div_ceil(BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for b in &mut s.blocks {
            *b = u64::MAX;
        }
        s.mask_tail();
        s
    }

    pub fn singleton(universe: usize, p: PointId) -> Self {
        let mut s = Self::empty(universe);
        s.insert(p);
        s
    }

    pub fn from_points<I: IntoIterator<Item = PointId>>(universe: usize, points: I) -> Self {
        let mut s = Self::empty(universe);
        for p in points {
            s.insert(p);
        }
        s
    }

    fn mask_tail(&mut self) {
        let rem = self.universe % BITS;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, p: PointId) {
        assert!(p.idx() < self.universe, "point {} outside universe", p.0);
        self.blocks[p.idx() / BITS] |= 1u64 << (p.idx() % BITS);
    }

    pub fn remove(&mut self, p: PointId) {
        assert!(p.idx() < self.universe, "point {} outside universe", p.0);
        self.blocks[p.idx() / BITS] &= !(1u64 << (p.idx() % BITS));
    }

    pub fn contains(&self, p: PointId) -> bool {
        p.idx() < self.universe && self.blocks[p.idx() / BITS] & (1u64 << (p.idx() % BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "point sets over different universes"
        );
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut s = self.clone();
        for (a, b) in s.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = PointId> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(PointId((i * BITS + t) as u32))
                }
            })
        })
    }

    pub fn first(&self) -> Option<PointId> {
        self.iter().next()
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p.0)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(universe: usize, elems: &[u32]) -> PointSet {
        PointSet::from_points(universe, elems.iter().map(|&e| PointId(e)))
    }

    #[test]
    fn insert_contains_remove() {
        let mut s = PointSet::empty(70);
        s.insert(PointId(0));
        s.insert(PointId(69));
        assert!(s.contains(PointId(0)));
        assert!(s.contains(PointId(69)));
        assert!(!s.contains(PointId(33)));
        assert_eq!(s.len(), 2);
        s.remove(PointId(0));
        assert!(!s.contains(PointId(0)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn full_masks_tail_bits() {
        let s = PointSet::full(67);
        assert_eq!(s.len(), 67);
        assert_eq!(s.iter().count(), 67);
    }

    #[test]
    fn set_algebra() {
        let a = set(10, &[1, 3, 5]);
        let b = set(10, &[3, 5, 7]);
        assert_eq!(a.union(&b), set(10, &[1, 3, 5, 7]));
        assert_eq!(a.intersection(&b), set(10, &[3, 5]));
        assert_eq!(a.difference(&b), set(10, &[1]));
        assert!(set(10, &[3]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.is_disjoint(&set(10, &[0, 2])));
    }

    #[test]
    fn iter_is_ascending() {
        let s = set(130, &[128, 2, 64, 7]);
        let got: Vec<u32> = s.iter().map(|p| p.0).collect();
        assert_eq!(got, vec![2, 7, 64, 128]);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        // Smaller sets come first; equal sizes compare on ascending members.
        let mut v = vec![
            set(6, &[1, 2]),
            set(6, &[0, 3]),
            set(6, &[4]),
            set(6, &[0, 1, 2]),
            set(6, &[0]),
        ];
        v.sort();
        let rendered: Vec<String> = v.iter().map(|s| format!("{s:?}")).collect();
        assert_eq!(rendered, vec!["{0}", "{4}", "{0,3}", "{1,2}", "{0,1,2}"]);
    }
}

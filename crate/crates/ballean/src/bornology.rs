//! Bornologies presented by a finite base of bounded sets.
//!
//! A subset counts as covered when some base element contains it.  Coverage
//! is presentation-relative: the base is not closed under unions or subsets;
//! it is exactly the list the presentation declares, normalized to canonical
//! order with duplicates removed.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Error;
use crate::point::{PointId, PointSet};
use crate::window::Window;

/// Hard cap on base-element size when enumerating covered subsets.
pub const SUBSET_ENUMERATION_BITS: usize = 20;
/// Hard cap on the number of enumerated covered subsets.
pub const SUBSET_ENUMERATION_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BornologyPresentation {
    window: Arc<Window>,
    base: Vec<PointSet>,
}

impl BornologyPresentation {
    /// Normalizes the base: rejects empty elements, removes duplicates, and
    /// sorts canonically (by size, then lexicographically on members).
    pub fn new(window: Arc<Window>, base: Vec<PointSet>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for b in base {
            if b.is_empty() {
                return Err(Error::EmptyBaseElement);
            }
            if b.universe() != window.len() {
                return Err(Error::BadParameter {
                    what: "bornology base element sized for a different window".into(),
                });
            }
            seen.insert(b);
        }
        Ok(BornologyPresentation {
            window,
            base: seen.into_iter().collect(),
        })
    }

    /// The bornology whose bounded sets are exactly the singletons.
    pub fn singletons(window: Arc<Window>) -> Self {
        let n = window.len();
        let base = (0..n)
            .map(|i| PointSet::singleton(n, PointId(i as u32)))
            .collect();
        BornologyPresentation { window, base }
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    /// The normalized base in canonical order.
    pub fn base(&self) -> &[PointSet] {
        &self.base
    }

    /// Whether some base element contains `a`.  The empty set is covered
    /// whenever the base is nonempty.
    pub fn covered(&self, a: &PointSet) -> bool {
        self.base.iter().any(|b| a.is_subset(b))
    }

    /// The least base element (in canonical order) containing `a`.
    pub fn least_cover(&self, a: &PointSet) -> Option<usize> {
        self.base.iter().position(|b| a.is_subset(b))
    }

    pub fn union_of_base(&self) -> PointSet {
        let mut u = PointSet::empty(self.window.len());
        for b in &self.base {
            u.union_with(b);
        }
        u
    }

    /// Whether the base elements with at least two points form a chain under
    /// inclusion.  Singletons are ignored: they are always mutually
    /// comparable-or-irrelevant for the ascending-ball structure.
    pub fn non_singletons_form_chain(&self) -> bool {
        let multi: Vec<&PointSet> = self.base.iter().filter(|b| b.len() >= 2).collect();
        for pair in multi.windows(2) {
            // Canonical order sorts by size, so a chain must ascend here.
            if !pair[0].is_subset(pair[1]) {
                return false;
            }
        }
        true
    }

    /// All nonempty covered subsets in canonical order.
    pub fn covered_subsets(&self) -> Result<Vec<PointSet>, Error> {
        let mut out: BTreeSet<PointSet> = BTreeSet::new();
        for b in &self.base {
            if b.len() > SUBSET_ENUMERATION_BITS {
                return Err(Error::DomainTooLarge {
                    what: "covered-subset enumeration",
                    size: b.len(),
                    limit: SUBSET_ENUMERATION_BITS,
                });
            }
            let members: Vec<PointId> = b.iter().collect();
            for mask in 1u32..(1u32 << members.len()) {
                let mut s = PointSet::empty(self.window.len());
                for (i, &p) in members.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        s.insert(p);
                    }
                }
                out.insert(s);
                if out.len() > SUBSET_ENUMERATION_LIMIT {
                    return Err(Error::DomainTooLarge {
                        what: "covered-subset enumeration",
                        size: out.len(),
                        limit: SUBSET_ENUMERATION_LIMIT,
                    });
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// All covered two-point subsets in canonical order.
    pub fn covered_pairs(&self) -> Vec<PointSet> {
        let n = self.window.len();
        let mut out = Vec::new();
        for i in 0..n as u32 {
            for j in (i + 1)..n as u32 {
                let s = PointSet::from_points(n, [PointId(i), PointId(j)]);
                if self.covered(&s) {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// First nonempty subset of `restrict` on which the two presentations
/// disagree about coverage, if any.  `Ok(None)` means the covered families
/// agree on every subset of `restrict`.
pub fn covered_family_difference(
    a: &BornologyPresentation,
    b: &BornologyPresentation,
    restrict: &PointSet,
) -> Result<Option<PointSet>, Error> {
    if !a.window().same_as(b.window()) {
        return Err(Error::WindowMismatch {
            context: "covered-family comparison",
        });
    }
    if restrict.len() > SUBSET_ENUMERATION_BITS {
        return Err(Error::DomainTooLarge {
            what: "covered-family comparison",
            size: restrict.len(),
            limit: SUBSET_ENUMERATION_BITS,
        });
    }
    let members: Vec<PointId> = restrict.iter().collect();
    let n = a.window().len();
    // Masks enumerate in an order that visits smaller subsets early enough
    // for witnesses to be readable; the first difference found is returned.
    let mut witnesses: BTreeSet<PointSet> = BTreeSet::new();
    for mask in 1u64..(1u64 << members.len()) {
        let mut s = PointSet::empty(n);
        for (i, &p) in members.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s.insert(p);
            }
        }
        if a.covered(&s) != b.covered(&s) {
            witnesses.insert(s);
        }
    }
    Ok(witnesses.into_iter().next())
}

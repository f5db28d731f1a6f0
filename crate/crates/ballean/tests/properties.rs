//! Randomized laws for the relational core.
//!
//! Each property pits a library operation against an independent model:
//! set operations against `BTreeSet`, composition against triple
//! enumeration built into associativity and monotonicity laws, and the
//! subset lift against its defining two-sided containment.

use std::collections::BTreeSet;
use std::sync::Arc;

use ballean::hyper::{lift_rows, SubsetUniverse};
use ballean::order::{two_selector_from_order, LinearOrder};
use ballean::{Entourage, PointId, PointSet, Window};
use proptest::prelude::*;

fn window(n: usize) -> Arc<Window> {
    Window::new((0..n).map(|i| format!("p{i}")).collect()).unwrap()
}

fn build(w: &Arc<Window>, pairs: &[(u32, u32)]) -> Entourage {
    let n = w.len() as u32;
    let mut e = Entourage::diagonal(w.clone());
    for &(x, y) in pairs {
        e = e.with_pair(PointId(x % n), PointId(y % n));
    }
    e
}

fn raw_pairs() -> impl Strategy<Value = Vec<(u32, u32)>> {
    proptest::collection::vec((0u32..8, 0u32..8), 0..20)
}

fn all_nonempty_subsets(n: usize) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = (1u32..(1 << n))
        .map(|mask| {
            PointSet::from_points(
                n,
                (0..n as u32).filter(|i| mask & (1 << i) != 0).map(PointId),
            )
        })
        .collect();
    out.sort();
    out
}

proptest! {
    #[test]
    fn compose_is_associative(
        n in 2usize..=5,
        a in raw_pairs(),
        b in raw_pairs(),
        c in raw_pairs(),
    ) {
        let w = window(n);
        let (e, f, g) = (build(&w, &a), build(&w, &b), build(&w, &c));
        let left = e.compose(&f).unwrap().compose(&g).unwrap();
        let right = e.compose(&f.compose(&g).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compose_is_monotone(
        n in 2usize..=5,
        a in raw_pairs(),
        extra in raw_pairs(),
        b in raw_pairs(),
    ) {
        let w = window(n);
        let e = build(&w, &a);
        let mut bigger_pairs = a.clone();
        bigger_pairs.extend_from_slice(&extra);
        let e_big = build(&w, &bigger_pairs);
        let f = build(&w, &b);
        prop_assert!(e.compose(&f).unwrap().is_subrelation_of(&e_big.compose(&f).unwrap()));
        prop_assert!(f.compose(&e).unwrap().is_subrelation_of(&f.compose(&e_big).unwrap()));
    }

    #[test]
    fn inverse_is_an_involution(n in 2usize..=5, a in raw_pairs()) {
        let w = window(n);
        let e = build(&w, &a);
        prop_assert_eq!(e.inverse().inverse(), e);
    }

    #[test]
    fn inverse_antidistributes_over_composition(
        n in 2usize..=5,
        a in raw_pairs(),
        b in raw_pairs(),
    ) {
        let w = window(n);
        let (e, f) = (build(&w, &a), build(&w, &b));
        prop_assert_eq!(
            e.compose(&f).unwrap().inverse(),
            f.inverse().compose(&e.inverse()).unwrap()
        );
    }

    #[test]
    fn lift_matches_two_sided_containment(n in 2usize..=4, a in raw_pairs()) {
        let w = window(n);
        let e = build(&w, &a);
        let universe = SubsetUniverse::new(all_nonempty_subsets(n));
        let rows = lift_rows(&e, &universe);
        for i in 0..universe.len() {
            for j in 0..universe.len() {
                let expected = universe.get(i).is_subset(&e.ball(universe.get(j)))
                    && universe.get(j).is_subset(&e.ball(universe.get(i)));
                prop_assert_eq!(rows[i].contains(PointId(j as u32)), expected);
                prop_assert_eq!(
                    rows[i].contains(PointId(j as u32)),
                    rows[j].contains(PointId(i as u32))
                );
            }
        }
    }

    #[test]
    fn lift_is_monotone(n in 2usize..=4, a in raw_pairs(), extra in raw_pairs()) {
        let w = window(n);
        let e = build(&w, &a);
        let mut bigger_pairs = a.clone();
        bigger_pairs.extend_from_slice(&extra);
        let e_big = build(&w, &bigger_pairs);
        let universe = SubsetUniverse::new(all_nonempty_subsets(n));
        let small = lift_rows(&e, &universe);
        let big = lift_rows(&e_big, &universe);
        for (s, b) in small.iter().zip(&big) {
            prop_assert!(s.is_subset(b));
        }
    }

    #[test]
    fn singleton_lift_is_the_symmetric_core(n in 2usize..=5, a in raw_pairs()) {
        let w = window(n);
        let e = build(&w, &a);
        let singletons: Vec<PointSet> =
            (0..n as u32).map(|i| PointSet::singleton(n, PointId(i))).collect();
        let universe = SubsetUniverse::new(singletons);
        let rows = lift_rows(&e, &universe);
        let core = e.symmetric_core();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(
                    rows[x].contains(PointId(y as u32)),
                    core.contains(PointId(x as u32), PointId(y as u32))
                );
            }
        }
    }

    #[test]
    fn min_selectors_recover_their_order(
        keys in proptest::collection::vec(any::<u32>(), 2..=6),
    ) {
        // Random sort keys induce a random permutation deterministically.
        let n = keys.len();
        let mut ranks: Vec<u32> = (0..n as u32).collect();
        ranks.sort_by_key(|&i| (keys[i as usize], i));
        let w = window(n);
        let order = LinearOrder::new(w.clone(), ranks.iter().map(|&i| PointId(i)).collect()).unwrap();
        let s = two_selector_from_order(&order);
        // The induced comparison agrees with the order on every pair, so
        // sorting by it recovers the ranking exactly.
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let (pa, pb) = (PointId(a), PointId(b));
                prop_assert_eq!(s.precedes(&w, pa, pb).unwrap(), order.le(pa, pb));
            }
        }
        let mut sorted: Vec<PointId> = (0..n as u32).map(PointId).collect();
        sorted.sort_by(|&x, &y| order.rank(x).cmp(&order.rank(y)));
        prop_assert_eq!(sorted.as_slice(), order.by_rank());
    }

    #[test]
    fn point_sets_match_a_set_model(
        n in 1usize..=7,
        xs in proptest::collection::vec(0u32..8, 0..10),
        ys in proptest::collection::vec(0u32..8, 0..10),
    ) {
        let xs: BTreeSet<u32> = xs.into_iter().map(|v| v % n as u32).collect();
        let ys: BTreeSet<u32> = ys.into_iter().map(|v| v % n as u32).collect();
        let a = PointSet::from_points(n, xs.iter().map(|&v| PointId(v)));
        let b = PointSet::from_points(n, ys.iter().map(|&v| PointId(v)));

        let union: BTreeSet<u32> = xs.union(&ys).copied().collect();
        let inter: BTreeSet<u32> = xs.intersection(&ys).copied().collect();
        let diff: BTreeSet<u32> = xs.difference(&ys).copied().collect();

        let got_union: BTreeSet<u32> = a.union(&b).iter().map(|p| p.0).collect();
        let got_inter: BTreeSet<u32> = a.intersection(&b).iter().map(|p| p.0).collect();
        let got_diff: BTreeSet<u32> = a.difference(&b).iter().map(|p| p.0).collect();

        prop_assert_eq!(&got_union, &union);
        prop_assert_eq!(&got_inter, &inter);
        prop_assert_eq!(&got_diff, &diff);
        prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
        prop_assert_eq!(a.is_disjoint(&b), xs.is_disjoint(&ys));
        prop_assert_eq!(a.len(), xs.len());
        let listed: Vec<u32> = a.iter().map(|p| p.0).collect();
        let mut ascending = listed.clone();
        ascending.sort_unstable();
        prop_assert_eq!(listed, ascending);
    }
}

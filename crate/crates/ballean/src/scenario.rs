//! Ready-made windows, presentations, and constraint scenarios.
//!
//! These constructions back the command line tool and the test suite:
//!
//! * rectangular integer grids under the sup metric, presented at a chosen
//!   list of radii;
//! * graph metrics presented at a chosen list of radii;
//! * the *antipodal grid* scenario: two-point subsets `{x, -x}` of a grid
//!   window, close when representatives land within distance one, with
//!   selected values required to stay within a given distance;
//! * the *regular polygon* scenario: antipodal vertex subsets of an even
//!   polygon, close when some representatives land within `delta`, values
//!   required to stay within `epsilon`;
//! * two-sided ordinal windows (a reversed copy of one segment followed by
//!   a plain copy of another) with their split order;
//! * the *coordinate flip* selector choosing the lexicographically largest
//!   point of every two-point subset.
//!
//! Geometry is exact: polygon vertices are rounded once to integer
//! micro-units and every comparison is made on squared integer distances,
//! so results never depend on floating-point evaluation order.

use std::sync::Arc;

use crate::entourage::Entourage;
use crate::error::Error;
use crate::order::LinearOrder;
use crate::point::{PointId, PointSet};
use crate::search::ConstraintScenario;
use crate::selector::{SelectorDomain, SelectorMap};
use crate::space::CoarsePresentation;
use crate::window::Window;

/// Integer micro-units per coordinate unit.
pub const MICRO: i64 = 1_000_000;

/// Largest accepted antipodal-grid parameter.
pub const ANTIPODAL_LIMIT: usize = 16;

/// Largest accepted polygon size.
pub const POLYGON_LIMIT: usize = 512;

fn sup_distance(a: [i64; 2], b: [i64; 2]) -> u64 {
    let dx = (a[0] - b[0]).unsigned_abs();
    let dy = (a[1] - b[1]).unsigned_abs();
    dx.max(dy)
}

fn squared_distance(a: [i64; 2], b: [i64; 2]) -> i128 {
    let dx = (a[0] - b[0]) as i128;
    let dy = (a[1] - b[1]) as i128;
    dx * dx + dy * dy
}

fn check_radii(radii: &[u64]) -> Result<(), Error> {
    if radii.is_empty() {
        return Err(Error::BadParameter {
            what: "at least one radius is required".into(),
        });
    }
    for w in radii.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::BadParameter {
                what: format!("radii must strictly ascend, got {} before {}", w[0], w[1]),
            });
        }
    }
    Ok(())
}

/// Converts a positive coordinate quantity to micro-units.
fn to_micro(what: &str, x: f64) -> Result<i64, Error> {
    if !x.is_finite() || x <= 0.0 || x > 1e9 {
        return Err(Error::BadParameter {
            what: format!("{what} must be a positive finite number, got {x}"),
        });
    }
    Ok((x * MICRO as f64).round() as i64)
}

/// A `width` by `height` integer grid under the sup metric, one entourage
/// per radius.  Labels are `(x,y)` with `x` across and `y` down; every
/// point is interior.
pub fn sup_grid_presentation(
    width: usize,
    height: usize,
    radii: &[u64],
) -> Result<CoarsePresentation, Error> {
    sup_metric_presentation(grid_window(width, height)?, radii)
}

/// The sup metric on any coordinate window, one entourage per radius.
pub fn sup_metric_presentation(
    window: Arc<Window>,
    radii: &[u64],
) -> Result<CoarsePresentation, Error> {
    check_radii(radii)?;
    metric_presentation(window, radii, sup_distance)
}

/// The window of a `width` by `height` grid with integer coordinates.
pub fn grid_window(width: usize, height: usize) -> Result<Arc<Window>, Error> {
    if width == 0 || height == 0 {
        return Err(Error::BadParameter {
            what: format!("grid of size {width} by {height} is empty"),
        });
    }
    let mut labels = Vec::with_capacity(width * height);
    let mut coords = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            labels.push(format!("({x},{y})"));
            coords.push([x as i64, y as i64]);
        }
    }
    let n = labels.len();
    Window::with_coords(labels, PointSet::full(n), coords)
}

fn metric_presentation(
    window: Arc<Window>,
    radii: &[u64],
    distance: impl Fn([i64; 2], [i64; 2]) -> u64,
) -> Result<CoarsePresentation, Error> {
    let n = window.len();
    let coords: Vec<[i64; 2]> = (0..n)
        .map(|i| {
            window.coord(PointId(i as u32)).ok_or(Error::BadParameter {
                what: "metric presentation needs coordinates".into(),
            })
        })
        .collect::<Result<_, _>>()?;
    let base = radii
        .iter()
        .map(|&r| {
            let balls = (0..n)
                .map(|i| {
                    let mut ball = PointSet::empty(n);
                    for j in 0..n {
                        if distance(coords[i], coords[j]) <= r {
                            ball.insert(PointId(j as u32));
                        }
                    }
                    ball
                })
                .collect();
            Entourage::new(window.clone(), balls)
        })
        .collect::<Result<Vec<_>, _>>()?;
    CoarsePresentation::new(window, base)
}

/// A graph metric on `window`, one entourage per radius.  `edges` are
/// undirected and indexed by point position.  Fails when the graph does not
/// connect the window.
pub fn graph_path_presentation(
    window: Arc<Window>,
    edges: &[(usize, usize)],
    radii: &[u64],
) -> Result<CoarsePresentation, Error> {
    check_radii(radii)?;
    let n = window.len();
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::UnknownPoint {
                detail: format!("edge ({a}, {b}) outside {n} points"),
            });
        }
        if a != b {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    let mut dist = vec![vec![u64::MAX; n]; n];
    for (source, row) in dist.iter_mut().enumerate() {
        row[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if row[v] == u64::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(t) = row.iter().position(|&d| d == u64::MAX) {
            return Err(Error::Disconnected {
                left: window.label(PointId(source as u32)).to_string(),
                right: window.label(PointId(t as u32)).to_string(),
            });
        }
    }
    let base = radii
        .iter()
        .map(|&r| {
            let balls = (0..n)
                .map(|i| {
                    let mut ball = PointSet::empty(n);
                    for j in 0..n {
                        if dist[i][j] <= r {
                            ball.insert(PointId(j as u32));
                        }
                    }
                    ball
                })
                .collect();
            Entourage::new(window.clone(), balls)
        })
        .collect::<Result<Vec<_>, _>>()?;
    CoarsePresentation::new(window, base)
}

/// The antipodal grid scenario at parameter `n`.
///
/// The window is the sup-metric square of radius `n + 1` around the origin
/// with the radius-`n` square as interior.  Every point `x` on the sphere
/// of radius `n` contributes the subset `{x, -x}`.  Two subsets are close
/// when some representatives lie within distance one, and selected values
/// of close subsets must lie within distance `n`.  The scenario is
/// unsatisfiable for every `n >= 1`: walking the sphere forces equally
/// oriented choices step by step, while the antipodal wrap-around forces
/// one flip.
pub fn antipodal_grid_scenario(n: usize) -> Result<ConstraintScenario, Error> {
    if n == 0 {
        return Err(Error::BadParameter {
            what: "antipodal grid needs a positive radius".into(),
        });
    }
    if n > ANTIPODAL_LIMIT {
        return Err(Error::DomainTooLarge {
            what: "antipodal grid radius",
            size: n,
            limit: ANTIPODAL_LIMIT,
        });
    }
    let n = n as i64;
    let side = 2 * (n + 1) + 1;
    let total = (side * side) as usize;
    let mut labels = Vec::with_capacity(total);
    let mut coords = Vec::with_capacity(total);
    let mut interior = PointSet::empty(total);
    let mut id_of = std::collections::BTreeMap::new();
    for y in -(n + 1)..=(n + 1) {
        for x in -(n + 1)..=(n + 1) {
            let p = PointId(labels.len() as u32);
            labels.push(format!("({x},{y})"));
            coords.push([x, y]);
            id_of.insert([x, y], p);
            if x.abs().max(y.abs()) <= n {
                interior.insert(p);
            }
        }
    }
    let window = Window::with_coords(labels, interior, coords.clone())?;

    let mut sphere_pairs = std::collections::BTreeSet::new();
    for &[x, y] in id_of.keys() {
        if x.abs().max(y.abs()) == n {
            let a = id_of[&[x, y]];
            let b = id_of[&[-x, -y]];
            sphere_pairs.insert(if a < b { (a, b) } else { (b, a) });
        }
    }
    let pairs: Vec<(PointId, PointId)> = sphere_pairs.into_iter().collect();

    let mut close_edges = Vec::new();
    for i in 0..pairs.len() {
        let a = coords[pairs[i].0.idx()];
        for (j, q) in pairs.iter().enumerate().skip(i + 1) {
            let b = coords[q.0.idx()];
            let anti_b = [-b[0], -b[1]];
            if sup_distance(a, b) <= 1 || sup_distance(a, anti_b) <= 1 {
                close_edges.push((i, j));
            }
        }
    }

    let mut allowed = Vec::new();
    for i in 0..total {
        for j in (i + 1)..total {
            if sup_distance(coords[i], coords[j]) <= n as u64 {
                allowed.push((PointId(i as u32), PointId(j as u32)));
            }
        }
    }

    ConstraintScenario::new(window, pairs, &close_edges, &allowed)
}

/// The regular polygon scenario.
///
/// `sides` must be even and at least four.  Vertices sit on the unit
/// circle, rounded to micro-units; opposite vertices form the two-point
/// subsets.  Subsets are close when some representatives lie within
/// `delta`, and selected values of close subsets must lie within
/// `epsilon`.  Distances compare squared integer micro-coordinates, so a
/// threshold is inclusive at exact equality.
pub fn ngon_scenario(sides: usize, delta: f64, epsilon: f64) -> Result<ConstraintScenario, Error> {
    if sides < 4 || sides % 2 != 0 {
        return Err(Error::BadParameter {
            what: format!("polygon needs an even number of sides, at least four, got {sides}"),
        });
    }
    if sides > POLYGON_LIMIT {
        return Err(Error::DomainTooLarge {
            what: "polygon sides",
            size: sides,
            limit: POLYGON_LIMIT,
        });
    }
    let delta = to_micro("delta", delta)?;
    let epsilon = to_micro("epsilon", epsilon)?;
    let delta_sq = (delta as i128) * (delta as i128);
    let epsilon_sq = (epsilon as i128) * (epsilon as i128);

    let mut labels = Vec::with_capacity(sides);
    let mut coords = Vec::with_capacity(sides);
    for i in 0..sides {
        let angle = 2.0 * std::f64::consts::PI * i as f64 / sides as f64;
        labels.push(format!("v{i}"));
        coords.push([
            (angle.cos() * MICRO as f64).round() as i64,
            (angle.sin() * MICRO as f64).round() as i64,
        ]);
    }
    let window = Window::with_coords(labels, PointSet::full(sides), coords.clone())?;

    let half = sides / 2;
    let pairs: Vec<(PointId, PointId)> = (0..half)
        .map(|i| (PointId(i as u32), PointId((i + half) as u32)))
        .collect();

    let mut close_edges = Vec::new();
    for i in 0..half {
        for j in (i + 1)..half {
            let near = squared_distance(coords[i], coords[j]) <= delta_sq
                || squared_distance(coords[i], coords[j + half]) <= delta_sq;
            if near {
                close_edges.push((i, j));
            }
        }
    }

    let mut allowed = Vec::new();
    for i in 0..sides {
        for j in (i + 1)..sides {
            if squared_distance(coords[i], coords[j]) <= epsilon_sq {
                allowed.push((PointId(i as u32), PointId(j as u32)));
            }
        }
    }

    ConstraintScenario::new(window, pairs, &close_edges, &allowed)
}

/// A two-sided ordinal window: `left` points labelled `l{left-1}` down to
/// `l0`, then `right` points labelled `r0` up to `r{right-1}`, ordered as
/// listed with the split placed between `l0` and `r0`.
pub fn ordinal_sum_window(left: usize, right: usize) -> Result<LinearOrder, Error> {
    if left == 0 || right == 0 {
        return Err(Error::BadParameter {
            what: "both parts of an ordinal sum need at least one point".into(),
        });
    }
    let mut labels: Vec<String> = (0..left).rev().map(|i| format!("l{i}")).collect();
    labels.extend((0..right).map(|j| format!("r{j}")));
    let window = Window::new(labels)?;
    let l0 = PointId((left - 1) as u32);
    let r0 = PointId(left as u32);
    LinearOrder::natural(window).with_split(l0, r0)
}

/// The coordinate flip selector: every two-point subset of the window maps
/// to its lexicographically largest member under the key `(y, x)`.  On
/// grids this tears along rows, so it makes a compact failing input for
/// selector checks.
pub fn flip_two_selector(window: &Arc<Window>) -> Result<SelectorMap, Error> {
    let n = window.len();
    let key = |p: PointId| -> Result<(i64, i64, u32), Error> {
        let c = window.coord(p).ok_or(Error::BadParameter {
            what: "flip selector needs coordinates".into(),
        })?;
        Ok((c[1], c[0], p.0))
    };
    let mut s = SelectorMap::new(SelectorDomain::TwoSubsets);
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (PointId(i as u32), PointId(j as u32));
            let chosen = if key(a)? > key(b)? { a } else { b };
            s.insert(PointSet::from_points(n, [a, b]), chosen);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::ordinal_sum_shape;
    use crate::search::{
        exhaustive_search, replay_certificate, search_two_selector, verify_witness, SearchOutcome,
    };
    use crate::space::ValidationEntry;

    #[test]
    fn line_grid_balls_follow_the_sup_metric() {
        let space = sup_grid_presentation(3, 1, &[1]).unwrap();
        let w = space.window().clone();
        let ball = |l: &str| space.scale(0).ball_of(w.point(l).unwrap());
        assert_eq!(w.render_set(ball("(0,0)")), "{(0,0),(1,0)}");
        assert_eq!(w.render_set(ball("(1,0)")), "{(0,0),(1,0),(2,0)}");
        assert_eq!(w.render_set(ball("(2,0)")), "{(1,0),(2,0)}");
    }

    #[test]
    fn square_grid_balls_are_squares() {
        let space = sup_grid_presentation(3, 3, &[1]).unwrap();
        let w = space.window().clone();
        let center = w.point("(1,1)").unwrap();
        let corner = w.point("(0,0)").unwrap();
        assert_eq!(space.scale(0).ball_of(center).len(), 9);
        assert_eq!(
            w.render_set(space.scale(0).ball_of(corner)),
            "{(0,0),(1,0),(0,1),(1,1)}"
        );
    }

    #[test]
    fn small_grids_validate() {
        // The top radius reaches the diameter, so compositions stay inside
        // the base everywhere on this all-interior window.
        let space = sup_grid_presentation(5, 1, &[1, 4]).unwrap();
        let report = space.validate();
        assert!(report.pass(), "unexpected violations: {:?}", report.entries);
    }

    #[test]
    fn long_grids_catch_composition_escape() {
        // On a ten-point line with radii one and two, composing the top
        // scale with itself reaches distance four, which no base element
        // absorbs around the middle of the line.
        let space = sup_grid_presentation(10, 1, &[1, 2]).unwrap();
        let report = space.validate();
        assert!(!report.pass());
        assert!(report
            .violations()
            .any(|v| matches!(v, ValidationEntry::CompositionEscapes { .. })));
    }

    #[test]
    fn grid_radii_must_ascend() {
        assert!(matches!(
            sup_grid_presentation(3, 1, &[2, 2]),
            Err(Error::BadParameter { .. })
        ));
        assert!(matches!(
            sup_grid_presentation(3, 1, &[]),
            Err(Error::BadParameter { .. })
        ));
        assert!(matches!(
            sup_grid_presentation(0, 2, &[1]),
            Err(Error::BadParameter { .. })
        ));
    }

    #[test]
    fn antipodal_pairs_sit_on_the_sphere() {
        let sc = antipodal_grid_scenario(1).unwrap();
        assert_eq!(sc.len(), 4);
        let w = sc.window().clone();
        assert_eq!(w.len(), 25);
        for &(a, b) in sc.pairs() {
            let ca = w.coord(a).unwrap();
            let cb = w.coord(b).unwrap();
            assert_eq!([ca[0] + cb[0], ca[1] + cb[1]], [0, 0], "not antipodal");
            assert_eq!(ca[0].abs().max(ca[1].abs()), 1, "not on the sphere");
        }
    }

    #[test]
    fn antipodal_grids_are_unsatisfiable() {
        for n in 1..=2 {
            let sc = antipodal_grid_scenario(n).unwrap();
            match search_two_selector(&sc) {
                SearchOutcome::Unsat { certificate } => {
                    replay_certificate(&sc, &certificate).unwrap();
                }
                other => panic!("expected unsat at n = {n}, got {other:?}"),
            }
            assert_eq!(exhaustive_search(&sc).unwrap(), None, "oracle at n = {n}");
        }
    }

    #[test]
    fn octagon_is_unsat_at_tight_tolerance_and_sat_at_loose() {
        let tight = ngon_scenario(8, 0.8, 1.0).unwrap();
        match search_two_selector(&tight) {
            SearchOutcome::Unsat { certificate } => {
                replay_certificate(&tight, &certificate).unwrap();
            }
            other => panic!("expected unsat, got {other:?}"),
        }
        assert_eq!(exhaustive_search(&tight).unwrap(), None);

        let loose = ngon_scenario(8, 0.8, 2.0).unwrap();
        match search_two_selector(&loose) {
            SearchOutcome::Found { assignment } => {
                verify_witness(&loose, &assignment).unwrap();
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert!(exhaustive_search(&loose).unwrap().is_some());
    }

    #[test]
    fn polygons_must_be_even_and_positive_tolerances() {
        assert!(matches!(
            ngon_scenario(7, 0.8, 1.0),
            Err(Error::BadParameter { .. })
        ));
        assert!(matches!(
            ngon_scenario(2, 0.8, 1.0),
            Err(Error::BadParameter { .. })
        ));
        assert!(matches!(
            ngon_scenario(8, 0.0, 1.0),
            Err(Error::BadParameter { .. })
        ));
        assert!(matches!(
            ngon_scenario(8, 0.8, f64::NAN),
            Err(Error::BadParameter { .. })
        ));
    }

    #[test]
    fn graph_metric_counts_hops() {
        let w = Window::new(vec!["a", "b", "c", "d"]).unwrap();
        let space =
            graph_path_presentation(w.clone(), &[(0, 1), (1, 2), (2, 3)], &[1, 3]).unwrap();
        assert_eq!(
            w.render_set(space.scale(0).ball_of(w.point("a").unwrap())),
            "{a,b}"
        );
        assert_eq!(
            w.render_set(space.scale(1).ball_of(w.point("b").unwrap())),
            "{a,b,c,d}"
        );
        assert!(space.validate().pass());
    }

    #[test]
    fn disconnected_graphs_are_rejected() {
        let w = Window::new(vec!["a", "b", "c", "d"]).unwrap();
        assert!(matches!(
            graph_path_presentation(w, &[(0, 1), (2, 3)], &[1]),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn ordinal_sum_windows_have_the_split_shape() {
        let order = ordinal_sum_window(2, 3).unwrap();
        let w = order.window().clone();
        assert_eq!(w.labels(), &["l1", "l0", "r0", "r1", "r2"]);
        let (l, r) = order.split().unwrap();
        assert_eq!(w.label(l), "l0");
        assert_eq!(w.label(r), "r0");
        assert!(ordinal_sum_shape(&order));
        assert!(ordinal_sum_window(0, 3).is_err());
    }

    #[test]
    fn flip_selector_prefers_high_coordinates() {
        let w = grid_window(2, 2).unwrap();
        let s = flip_two_selector(&w).unwrap();
        assert_eq!(s.len(), 6);
        let pick = |a: &str, b: &str| {
            let subset =
                PointSet::from_points(4, [w.point(a).unwrap(), w.point(b).unwrap()]);
            w.label(s.get(&subset).unwrap()).to_string()
        };
        assert_eq!(pick("(0,0)", "(1,1)"), "(1,1)");
        assert_eq!(pick("(1,0)", "(0,1)"), "(0,1)");
        assert_eq!(pick("(0,0)", "(1,0)"), "(1,0)");
    }
}

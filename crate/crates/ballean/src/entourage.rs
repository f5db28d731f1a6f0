//! Entourages over a window, stored as ball tables.
//!
//! An entourage is a relation on the window, kept row-wise: `ball_of(x)` is
//! the set of `y` with `(x, y)` in the relation.  Entourages of a coarse
//! presentation are expected to contain the diagonal; the constructor does
//! not enforce that, so that malformed bases can be represented and then
//! reported by validation.

use std::sync::Arc;

use crate::error::Error;
use crate::point::{PointId, PointSet};
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entourage {
    window: Arc<Window>,
    balls: Vec<PointSet>,
}

impl Entourage {
    pub fn new(window: Arc<Window>, balls: Vec<PointSet>) -> Result<Self, Error> {
        if balls.len() != window.len() || balls.iter().any(|b| b.universe() != window.len()) {
            return Err(Error::BadParameter {
                what: "ball table sized for a different window".into(),
            });
        }
        Ok(Entourage { window, balls })
    }

    /// The diagonal relation: every ball is a singleton.
    pub fn diagonal(window: Arc<Window>) -> Self {
        let n = window.len();
        let balls = (0..n)
            .map(|i| PointSet::singleton(n, PointId(i as u32)))
            .collect();
        Entourage { window, balls }
    }

    /// The full relation.
    pub fn full(window: Arc<Window>) -> Self {
        let n = window.len();
        let balls = (0..n).map(|_| PointSet::full(n)).collect();
        Entourage { window, balls }
    }

    /// Adds a single pair `(x, y)`.
    pub fn with_pair(mut self, x: PointId, y: PointId) -> Self {
        self.balls[x.idx()].insert(y);
        self
    }

    /// Adds `(x, y)` and `(y, x)`.
    pub fn with_sym_pair(self, x: PointId, y: PointId) -> Self {
        self.with_pair(x, y).with_pair(y, x)
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn contains(&self, x: PointId, y: PointId) -> bool {
        self.balls[x.idx()].contains(y)
    }

    /// The ball `E[x]`.
    pub fn ball_of(&self, x: PointId) -> &PointSet {
        &self.balls[x.idx()]
    }

    /// The ball of a set, `E[A]`: the union of the balls of its members.
    pub fn ball(&self, a: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.window.len());
        for p in a.iter() {
            out.union_with(&self.balls[p.idx()]);
        }
        out
    }

    fn require_same_window(&self, other: &Self, context: &'static str) -> Result<(), Error> {
        if self.window.same_as(&other.window) {
            Ok(())
        } else {
            Err(Error::WindowMismatch { context })
        }
    }

    /// Composition: `(x, y)` is in `compose(E, F)` when some `z` has
    /// `(x, z)` in `E` and `(z, y)` in `F`.  Row-wise this is the `F`-ball
    /// of the `E`-ball of `x`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        self.require_same_window(other, "compose")?;
        let balls = self.balls.iter().map(|b| other.ball(b)).collect();
        Ok(Entourage {
            window: self.window.clone(),
            balls,
        })
    }

    /// The transpose relation.
    pub fn inverse(&self) -> Self {
        let n = self.window.len();
        let mut balls = vec![PointSet::empty(n); n];
        for (x, ball) in self.balls.iter().enumerate() {
            for y in ball.iter() {
                balls[y.idx()].insert(PointId(x as u32));
            }
        }
        Entourage {
            window: self.window.clone(),
            balls,
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self, Error> {
        self.require_same_window(other, "union")?;
        let balls = self
            .balls
            .iter()
            .zip(&other.balls)
            .map(|(a, b)| a.union(b))
            .collect();
        Ok(Entourage {
            window: self.window.clone(),
            balls,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, Error> {
        self.require_same_window(other, "intersection")?;
        let balls = self
            .balls
            .iter()
            .zip(&other.balls)
            .map(|(a, b)| a.intersection(b))
            .collect();
        Ok(Entourage {
            window: self.window.clone(),
            balls,
        })
    }

    /// The largest symmetric relation inside this one: `E` meet `E`
    /// transposed.
    pub fn symmetric_core(&self) -> Self {
        self.intersection(&self.inverse())
            .expect("inverse shares the window")
    }

    /// Symmetrization: `E` join `E` transposed.
    pub fn symmetrized(&self) -> Self {
        self.union(&self.inverse()).expect("inverse shares the window")
    }

    pub fn is_reflexive(&self) -> bool {
        self.balls
            .iter()
            .enumerate()
            .all(|(i, b)| b.contains(PointId(i as u32)))
    }

    /// First point whose ball misses the diagonal, if any.
    pub fn missing_diagonal_witness(&self) -> Option<PointId> {
        self.balls
            .iter()
            .enumerate()
            .find(|(i, b)| !b.contains(PointId(*i as u32)))
            .map(|(i, _)| PointId(i as u32))
    }

    pub fn is_subrelation_of(&self, other: &Self) -> bool {
        self.balls
            .iter()
            .zip(&other.balls)
            .all(|(a, b)| a.is_subset(b))
    }

    /// True when every ball of an interior point is contained in the
    /// corresponding ball of `other`.
    pub fn contained_on_interior(&self, other: &Self, interior: &PointSet) -> bool {
        self.interior_escape_witness(other, interior).is_none()
    }

    /// First interior point whose ball escapes `other`, if any.
    pub fn interior_escape_witness(
        &self,
        other: &Self,
        interior: &PointSet,
    ) -> Option<PointId> {
        interior
            .iter()
            .find(|&x| !self.balls[x.idx()].is_subset(&other.balls[x.idx()]))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.inverse()
    }

    /// All pairs of the relation in canonical `(x, y)` order.
    pub fn pairs(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.balls
            .iter()
            .enumerate()
            .flat_map(|(x, ball)| ball.iter().map(move |y| (PointId(x as u32), y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window3() -> Arc<Window> {
        Window::new(vec!["0", "1", "2"]).unwrap()
    }

    /// Independent composition oracle: enumerate all witnesses z.
    fn compose_oracle(e: &Entourage, f: &Entourage) -> Vec<(u32, u32)> {
        let n = e.window().len() as u32;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let witnessed = (0..n).any(|z| {
                    e.contains(PointId(x), PointId(z)) && f.contains(PointId(z), PointId(y))
                });
                if witnessed {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn pairs_of(e: &Entourage) -> Vec<(u32, u32)> {
        e.pairs().map(|(x, y)| (x.0, y.0)).collect()
    }

    #[test]
    fn compose_chains_steps() {
        let w = window3();
        // Diagonal plus (0,1) and (1,2): one step to the right.
        let e = Entourage::diagonal(w.clone())
            .with_pair(PointId(0), PointId(1))
            .with_pair(PointId(1), PointId(2));
        let ee = e.compose(&e).unwrap();
        assert!(ee.contains(PointId(0), PointId(2)));
        assert!(!ee.contains(PointId(2), PointId(0)));
        assert_eq!(pairs_of(&ee), compose_oracle(&e, &e));
    }

    #[test]
    fn compose_matches_oracle_on_asymmetric_inputs() {
        let w = window3();
        let e = Entourage::diagonal(w.clone()).with_pair(PointId(2), PointId(0));
        let f = Entourage::diagonal(w.clone())
            .with_pair(PointId(0), PointId(1))
            .with_pair(PointId(2), PointId(1));
        assert_eq!(pairs_of(&e.compose(&f).unwrap()), compose_oracle(&e, &f));
        assert_eq!(pairs_of(&f.compose(&e).unwrap()), compose_oracle(&f, &e));
    }

    #[test]
    fn inverse_is_an_involution() {
        let w = window3();
        let e = Entourage::diagonal(w)
            .with_pair(PointId(0), PointId(2))
            .with_pair(PointId(1), PointId(0));
        assert_eq!(e.inverse().inverse(), e);
        assert!(e.inverse().contains(PointId(2), PointId(0)));
        assert!(!e.inverse().contains(PointId(0), PointId(2)));
    }

    #[test]
    fn ball_of_set_is_union_of_member_balls() {
        let w = window3();
        let e = Entourage::diagonal(w.clone())
            .with_pair(PointId(0), PointId(1))
            .with_pair(PointId(2), PointId(1));
        let a = PointSet::from_points(3, [PointId(0), PointId(2)]);
        let mut expect = PointSet::empty(3);
        expect.union_with(e.ball_of(PointId(0)));
        expect.union_with(e.ball_of(PointId(2)));
        assert_eq!(e.ball(&a), expect);
        assert_eq!(e.ball(&a).len(), 3);
    }

    #[test]
    fn reflexivity_preserved_by_ops() {
        let w = window3();
        let e = Entourage::diagonal(w.clone()).with_pair(PointId(0), PointId(1));
        let f = Entourage::diagonal(w).with_pair(PointId(1), PointId(2));
        assert!(e.compose(&f).unwrap().is_reflexive());
        assert!(e.inverse().is_reflexive());
        assert!(e.union(&f).unwrap().is_reflexive());
    }

    #[test]
    fn symmetric_core_keeps_mutual_pairs() {
        let w = window3();
        let e = Entourage::diagonal(w)
            .with_pair(PointId(0), PointId(1))
            .with_pair(PointId(1), PointId(0))
            .with_pair(PointId(1), PointId(2));
        let core = e.symmetric_core();
        assert!(core.contains(PointId(0), PointId(1)));
        assert!(core.contains(PointId(1), PointId(0)));
        assert!(!core.contains(PointId(1), PointId(2)));
        assert!(core.is_symmetric());
    }

    #[test]
    fn window_mismatch_is_an_error() {
        let a = Entourage::diagonal(window3());
        let b = Entourage::diagonal(Window::new(vec!["x", "y"]).unwrap());
        assert!(matches!(
            a.compose(&b),
            Err(Error::WindowMismatch { context: "compose" })
        ));
    }

    #[test]
    fn interior_containment_ignores_boundary_escapes() {
        let w = Window::with_interior(vec!["0", "1", "2"], &["0", "1"]).unwrap();
        // Ball of the boundary point 2 escapes; interior balls do not.
        let e = Entourage::diagonal(w.clone())
            .with_pair(PointId(2), PointId(0))
            .with_pair(PointId(2), PointId(1));
        let d = Entourage::diagonal(w.clone());
        assert!(e.contained_on_interior(&d, w.interior()));
        assert_eq!(
            e.interior_escape_witness(&d, &w.all_points()),
            Some(PointId(2))
        );
    }
}

//! Finite windows: the visible fragment of a (possibly infinite) space.
//!
//! A window fixes the canonical point enumeration — the order in which labels
//! were listed — and distinguishes *interior* points, whose balls the window
//! represents completely.  Universally quantified checks run over interior
//! points only; boundary points exist so that interior balls are exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::point::{PointId, PointSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    labels: Vec<String>,
    index: BTreeMap<String, PointId>,
    interior: PointSet,
    coords: Option<Vec<[i64; 2]>>,
}

impl Window {
    /// A window in which every point is interior.
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Arc<Self>, Error> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        Self::build(labels, PointSet::full(n), None)
    }

    pub fn with_interior<S: Into<String>>(
        labels: Vec<S>,
        interior_labels: &[&str],
    ) -> Result<Arc<Self>, Error> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            index.insert(l.clone(), PointId(i as u32));
        }
        let mut interior = PointSet::empty(labels.len());
        for l in interior_labels {
            let p = index.get(*l).copied().ok_or_else(|| Error::UnknownPoint {
                detail: format!("interior label {l:?}"),
            })?;
            interior.insert(p);
        }
        Self::build(labels, interior, None)
    }

    pub fn with_coords(
        labels: Vec<String>,
        interior: PointSet,
        coords: Vec<[i64; 2]>,
    ) -> Result<Arc<Self>, Error> {
        if coords.len() != labels.len() {
            return Err(Error::BadParameter {
                what: format!(
                    "{} coordinates for {} labels",
                    coords.len(),
                    labels.len()
                ),
            });
        }
        Self::build(labels, interior, Some(coords))
    }

    pub fn build(
        labels: Vec<String>,
        interior: PointSet,
        coords: Option<Vec<[i64; 2]>>,
    ) -> Result<Arc<Self>, Error> {
        if labels.is_empty() {
            return Err(Error::BadParameter {
                what: "window must contain at least one point".into(),
            });
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), PointId(i as u32)).is_some() {
                return Err(Error::DuplicateLabel { label: l.clone() });
            }
        }
        if interior.universe() != labels.len() {
            return Err(Error::BadParameter {
                what: "interior set sized for a different window".into(),
            });
        }
        Ok(Arc::new(Window {
            labels,
            index,
            interior,
            coords,
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: PointId) -> &str {
        &self.labels[p.idx()]
    }

    pub fn point(&self, label: &str) -> Option<PointId> {
        self.index.get(label).copied()
    }

    pub fn require_point(&self, label: &str) -> Result<PointId, Error> {
        self.point(label).ok_or_else(|| Error::UnknownPoint {
            detail: format!("{label:?}"),
        })
    }

    /// Points in canonical order.
    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.labels.len() as u32).map(PointId)
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.labels.len())
    }

    pub fn interior(&self) -> &PointSet {
        &self.interior
    }

    pub fn is_interior(&self, p: PointId) -> bool {
        self.interior.contains(p)
    }

    pub fn coords(&self) -> Option<&[[i64; 2]]> {
        self.coords.as_deref()
    }

    pub fn coord(&self, p: PointId) -> Option<[i64; 2]> {
        self.coords.as_ref().map(|c| c[p.idx()])
    }

    /// Renders a subset as `{a,b,c}` in canonical member order.
    pub fn render_set(&self, s: &PointSet) -> String {
        let mut out = String::from("{");
        for (i, p) in s.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(self.label(p));
        }
        out.push('}');
        out
    }

    /// Parses a list of labels into a subset.
    pub fn parse_set(&self, labels: &[String]) -> Result<PointSet, Error> {
        let mut s = PointSet::empty(self.len());
        for l in labels {
            s.insert(self.require_point(l)?);
        }
        Ok(s)
    }

    /// True when the two windows describe the same points.  Used by
    /// operations that require their operands to live on one window.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

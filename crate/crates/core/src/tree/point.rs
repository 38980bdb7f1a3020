//! Exact points of the geometric realization.

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::skeleton::{valid_name, EdgeId, TreeSkeleton, VertexId};
use crate::rational::{format_rational, parse_rational, Q};

/// A point of the realization in canonical form. Edge offsets are measured
/// from the root-closer endpoint and lie strictly inside the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Vertex(VertexId),
    Edge { edge: EdgeId, offset: Q },
}

/// A point as written by a user, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawPoint {
    Vertex(String),
    /// Offset measured from `from`.
    OnEdge {
        from: String,
        to: String,
        offset: Q,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("malformed point `{0}`")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    UnknownEdge(String, String),
    #[error("offset {0} outside [0, {1}]")]
    OffsetOutOfRange(String, String),
}

impl RawPoint {
    /// Parses `<vertex>` or `<v1>-<v2>@<offset>`.
    pub fn parse(text: &str) -> Result<Self, PointError> {
        let text = text.trim();
        let err = || PointError::Syntax(text.to_string());
        match text.split_once('@') {
            None => {
                if valid_name(text) {
                    Ok(RawPoint::Vertex(text.to_string()))
                } else {
                    Err(err())
                }
            }
            Some((edge, offset)) => {
                let (from, to) = edge.split_once('-').ok_or_else(err)?;
                if !valid_name(from) || !valid_name(to) {
                    return Err(err());
                }
                let offset = parse_rational(offset).map_err(|_| err())?;
                Ok(RawPoint::OnEdge {
                    from: from.to_string(),
                    to: to.to_string(),
                    offset,
                })
            }
        }
    }
}

impl TreeSkeleton {
    /// Validates a raw point and brings it to canonical form.
    pub fn canonicalize(&self, raw: &RawPoint) -> Result<Point, PointError> {
        let lookup = |name: &str| {
            self.vertex(name)
                .ok_or_else(|| PointError::UnknownVertex(name.to_string()))
        };
        match raw {
            RawPoint::Vertex(name) => Ok(Point::Vertex(lookup(name)?)),
            RawPoint::OnEdge { from, to, offset } => {
                let (a, b) = (lookup(from)?, lookup(to)?);
                let edge = self
                    .edge_between(a, b)
                    .ok_or_else(|| PointError::UnknownEdge(from.clone(), to.clone()))?;
                let length = self.edge(edge).length;
                if offset.is_negative() || *offset > length {
                    return Err(PointError::OffsetOutOfRange(
                        format_rational(offset),
                        format_rational(&length),
                    ));
                }
                let from_lower = if self.edge(edge).lower == a {
                    *offset
                } else {
                    length - offset
                };
                Ok(self.point_on_edge(edge, from_lower))
            }
        }
    }

    /// Parses and canonicalizes point syntax in one step.
    pub fn parse_point(&self, text: &str) -> Result<Point, PointError> {
        self.canonicalize(&RawPoint::parse(text)?)
    }

    /// Canonical point at `offset` from the lower endpoint of `edge`.
    /// `offset` must lie in `[0, length]`.
    pub fn point_on_edge(&self, edge: EdgeId, offset: Q) -> Point {
        let e = self.edge(edge);
        debug_assert!(!offset.is_negative() && offset <= e.length);
        if offset.is_zero() {
            Point::Vertex(e.lower)
        } else if offset == e.length {
            Point::Vertex(e.upper)
        } else {
            Point::Edge { edge, offset }
        }
    }

    /// True iff `p` is a well-formed canonical point of this skeleton.
    pub fn contains_point(&self, p: &Point) -> bool {
        match *p {
            Point::Vertex(v) => v.index() < self.vertex_count(),
            Point::Edge { edge, offset } => {
                edge.index() < self.edge_count()
                    && offset.is_positive()
                    && offset < self.edge(edge).length
            }
        }
    }

    /// The vertex whose root path passes through `p` and ends closest to
    /// it: `p` itself for vertices, the upper endpoint for edge points.
    pub fn key_vertex(&self, p: &Point) -> VertexId {
        match *p {
            Point::Vertex(v) => v,
            Point::Edge { edge, .. } => self.edge(edge).upper,
        }
    }

    /// Arc-length distance from the root.
    pub fn point_depth(&self, p: &Point) -> Q {
        match *p {
            Point::Vertex(v) => self.depth(v),
            Point::Edge { edge, offset } => self.depth(self.edge(edge).lower) + offset,
        }
    }

    /// Renders in point syntax; edge offsets are given from the lower end.
    pub fn display_point(&self, p: &Point) -> String {
        match *p {
            Point::Vertex(v) => self.name(v).to_string(),
            Point::Edge { edge, offset } => {
                format!("{}@{}", self.edge_label(edge), format_rational(&offset))
            }
        }
    }

    /// Every vertex as a point.
    pub fn vertex_points(&self) -> Vec<Point> {
        self.vertices().map(Point::Vertex).collect()
    }

    /// The cut decomposition induced by `anchors`: every vertex, every
    /// anchor, and the midpoint of each maximal sub-arc left after cutting
    /// every edge at every anchor. Sorted and deduplicated.
    ///
    /// Any predicate whose truth value can only change at anchors or
    /// vertices is constant on each sub-arc, so quantifying over this list
    /// decides it over the whole realization.
    pub fn cut_points(&self, anchors: &[Point]) -> Vec<Point> {
        let mut cuts: Vec<Vec<Q>> = self
            .edges()
            .iter()
            .map(|e| vec![Q::zero(), e.length])
            .collect();
        for a in anchors {
            if let Point::Edge { edge, offset } = *a {
                cuts[edge.index()].push(offset);
            }
        }
        let mut out = self.vertex_points();
        out.extend(anchors.iter().copied());
        for (i, mut offsets) in cuts.into_iter().enumerate() {
            offsets.sort();
            offsets.dedup();
            let edge = EdgeId(i as u32);
            for w in offsets.windows(2) {
                let mid = (w[0] + w[1]) / Q::from_integer(2);
                out.push(Point::Edge { edge, offset: mid });
            }
            out.extend(
                offsets
                    .iter()
                    .filter(|o| o.is_positive() && **o < self.edge(edge).length)
                    .map(|&offset| Point::Edge { edge, offset }),
            );
        }
        out.sort();
        out.dedup();
        out
    }

    /// The point on the root path of vertex `w` at root distance `depth`,
    /// which must not exceed `depth(w)`.
    pub(crate) fn point_at_depth(&self, w: VertexId, depth: Q) -> Point {
        let mut cur = w;
        loop {
            if self.depth(cur) == depth {
                return Point::Vertex(cur);
            }
            let parent = self.parent(cur).expect("depth above the root");
            if self.depth(parent) < depth {
                let edge = self.edge_above(cur).unwrap();
                return Point::Edge {
                    edge,
                    offset: depth - self.depth(parent),
                };
            }
            cur = parent;
        }
    }
}

//! Closed segments `[a, b]` as explicit arc lists.

use num_traits::Zero;

use super::order::OrderView;
use super::point::Point;
use super::skeleton::{EdgeId, TreeSkeleton, VertexId};
use crate::rational::Q;

/// A maximal piece of a segment lying on one edge. Offsets are measured
/// from the edge's lower endpoint; `from` is where the walk enters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathArc {
    pub edge: EdgeId,
    pub from: Q,
    pub to: Q,
}

impl PathArc {
    pub fn length(&self) -> Q {
        if self.from <= self.to {
            self.to - self.from
        } else {
            self.from - self.to
        }
    }

    pub fn contains_offset(&self, offset: Q) -> bool {
        let (lo, hi) = if self.from <= self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        };
        lo <= offset && offset <= hi
    }

    fn reversed(&self) -> PathArc {
        PathArc {
            edge: self.edge,
            from: self.to,
            to: self.from,
        }
    }
}

/// The unique path between two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRepr {
    pub start: Point,
    pub end: Point,
    pub arcs: Vec<PathArc>,
    /// Skeleton vertices on the path in walking order, endpoints included.
    pub vertices: Vec<VertexId>,
}

struct Climb {
    arcs: Vec<PathArc>,
    vertices: Vec<VertexId>,
}

impl TreeSkeleton {
    /// Walks from `p` down the root path to its ancestor point `m`.
    fn climb(&self, p: &Point, m: &Point) -> Climb {
        let mut out = Climb {
            arcs: Vec::new(),
            vertices: Vec::new(),
        };
        if p == m {
            return out;
        }
        let (mut edge, mut start) = match *p {
            Point::Vertex(v) => {
                let e = self.edge_above(v).expect("climb below the root");
                (e, self.edge(e).length)
            }
            Point::Edge { edge, offset } => (edge, offset),
        };
        loop {
            let lower = self.edge(edge).lower;
            let stop = match *m {
                Point::Edge { edge: me, offset } if me == edge => Some(offset),
                Point::Vertex(mv) if mv == lower => Some(Q::zero()),
                _ => None,
            };
            match stop {
                Some(offset) => {
                    out.arcs.push(PathArc {
                        edge,
                        from: start,
                        to: offset,
                    });
                    if offset.is_zero() {
                        out.vertices.push(lower);
                    }
                    return out;
                }
                None => {
                    out.arcs.push(PathArc {
                        edge,
                        from: start,
                        to: Q::zero(),
                    });
                    out.vertices.push(lower);
                    edge = self.edge_above(lower).expect("target is not an ancestor");
                    start = self.edge(edge).length;
                }
            }
        }
    }

    /// The closed segment `[a, b]`, as `[a∧b, a] ∪ [a∧b, b]` walked from
    /// `a` to `b`.
    pub fn segment(&self, a: &Point, b: &Point) -> PathRepr {
        let m = self.root_meet(a, b);
        let up = self.climb(a, &m);
        let down = self.climb(b, &m);

        let mut arcs = up.arcs;
        arcs.extend(down.arcs.iter().rev().map(PathArc::reversed));

        let mut vertices = Vec::new();
        if let Point::Vertex(v) = a {
            vertices.push(*v);
        }
        vertices.extend(up.vertices);
        vertices.extend(down.vertices.into_iter().rev());
        if let Point::Vertex(v) = b {
            vertices.push(*v);
        }
        vertices.dedup();

        PathRepr {
            start: *a,
            end: *b,
            arcs,
            vertices,
        }
    }

    /// The point at arc-length `distance` from `a` towards `b`.
    pub fn point_along(&self, a: &Point, b: &Point, distance: Q) -> Point {
        let m = self.root_meet(a, b);
        let da = self.point_depth(a) - self.point_depth(&m);
        if distance <= da {
            self.point_at_depth(self.key_vertex(a), self.point_depth(a) - distance)
        } else {
            debug_assert!(
                distance <= self.distance(a, b),
                "past the end of the segment"
            );
            self.point_at_depth(self.key_vertex(b), self.point_depth(&m) + distance - da)
        }
    }
}

impl PathRepr {
    pub fn length(&self) -> Q {
        self.arcs.iter().map(PathArc::length).sum()
    }

    /// Membership with inclusive bounds.
    pub fn contains(&self, c: &Point) -> bool {
        if *c == self.start || *c == self.end {
            return true;
        }
        match *c {
            Point::Vertex(v) => self.vertices.contains(&v),
            Point::Edge { edge, offset } => self
                .arcs
                .iter()
                .any(|arc| arc.edge == edge && arc.contains_offset(offset)),
        }
    }

    /// Membership in the half-open or open variants `]a,b]`, `[a,b[`,
    /// `]a,b[`.
    pub fn contains_with(&self, c: &Point, include_start: bool, include_end: bool) -> bool {
        if (!include_start && *c == self.start) || (!include_end && *c == self.end) {
            return false;
        }
        self.contains(c)
    }
}

/// `segment(view, a, b)`; the view does not affect the result.
pub fn segment(view: &OrderView, a: &Point, b: &Point) -> PathRepr {
    view.skeleton().segment(a, b)
}

pub fn point_on_segment(c: &Point, path: &PathRepr) -> bool {
    path.contains(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse::parse_tree;

    fn y() -> TreeSkeleton {
        parse_tree("((a:1,b:2)v:1)r;").unwrap()
    }

    fn label_arcs(t: &TreeSkeleton, path: &PathRepr) -> Vec<String> {
        path.arcs
            .iter()
            .map(|a| {
                format!(
                    "{} {}->{}",
                    t.edge_label(a.edge),
                    crate::rational::format_rational(&a.from),
                    crate::rational::format_rational(&a.to)
                )
            })
            .collect()
    }

    #[test]
    fn leaf_to_leaf() {
        let t = y();
        let path = t.segment(&t.parse_point("a").unwrap(), &t.parse_point("b").unwrap());
        assert_eq!(label_arcs(&t, &path), ["v-a 1->0", "v-b 0->2"]);
        let names: Vec<_> = path.vertices.iter().map(|&v| t.name(v)).collect();
        assert_eq!(names, ["a", "v", "b"]);
        assert_eq!(path.length(), Q::from_integer(3));
    }

    #[test]
    fn degenerate() {
        let t = y();
        let r = t.parse_point("r").unwrap();
        let path = t.segment(&r, &r);
        assert!(path.arcs.is_empty());
        assert!(path.contains(&r));
        assert!(!path.contains(&t.parse_point("v").unwrap()));
    }

    #[test]
    fn interior_start() {
        let t = y();
        let path = t.segment(
            &t.parse_point("v-b@1").unwrap(),
            &t.parse_point("a").unwrap(),
        );
        assert_eq!(label_arcs(&t, &path), ["v-b 1->0", "v-a 0->1"]);
    }

    #[test]
    fn membership_examples() {
        let t = y();
        let path = t.segment(&t.parse_point("a").unwrap(), &t.parse_point("b").unwrap());
        assert!(point_on_segment(&t.parse_point("v").unwrap(), &path));
        assert!(!point_on_segment(&t.parse_point("r").unwrap(), &path));
        assert!(point_on_segment(&t.parse_point("v-b@1/2").unwrap(), &path));
        let a = t.parse_point("a").unwrap();
        assert!(!path.contains_with(&a, false, true));
        assert!(path.contains_with(&a, true, false));
    }

    #[test]
    fn point_along_walks_both_legs() {
        let t = y();
        let (a, b) = (t.parse_point("a").unwrap(), t.parse_point("b").unwrap());
        assert_eq!(
            t.point_along(&a, &b, Q::new(3, 2)),
            t.parse_point("v-b@1/2").unwrap()
        );
        assert_eq!(
            t.point_along(&a, &b, Q::from_integer(1)),
            t.parse_point("v").unwrap()
        );
        assert_eq!(t.point_along(&a, &b, Q::zero()), a);
        assert_eq!(t.point_along(&a, &b, Q::from_integer(3)), b);
    }
}

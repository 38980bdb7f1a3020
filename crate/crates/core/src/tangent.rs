//! Tangent classes `[a]_t` and tangent spaces.
//!
//! `a ∼_t b` iff `t ∉ [a, b]`; the class `[a]_t` is the component of the
//! realization minus `t` that contains `a`. Each class is identified by the
//! first step of the path leaving `t`, its [`Direction`].

use thiserror::Error;

use crate::tree::{EdgeId, Point, TreeSkeleton, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangentError {
    #[error("point coincides with the anchor; `∼_t` is only defined away from `t`")]
    AtAnchor,
}

/// The first step away from an anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Along an incident edge of a vertex anchor.
    Edge(EdgeId),
    /// From an edge-interior anchor towards the edge's upper endpoint.
    TowardUpper,
    /// From an edge-interior anchor towards the edge's lower endpoint.
    TowardLower,
}

impl TreeSkeleton {
    /// The direction in which `x` lies as seen from `t`, or `None` if they
    /// coincide.
    pub fn direction_from(&self, t: &Point, x: &Point) -> Option<Direction> {
        if t == x {
            return None;
        }
        Some(match *t {
            Point::Vertex(v) => {
                if self.root_leq(t, x) {
                    let child = self.child_toward(v, self.key_vertex(x));
                    Direction::Edge(self.edge_above(child).unwrap())
                } else {
                    Direction::Edge(self.edge_above(v).unwrap())
                }
            }
            Point::Edge { .. } => {
                if self.root_leq(t, x) {
                    Direction::TowardUpper
                } else {
                    Direction::TowardLower
                }
            }
        })
    }

    /// The skeleton vertex reached by following `direction` from `anchor`.
    pub fn direction_target(&self, anchor: &Point, direction: Direction) -> VertexId {
        match (*anchor, direction) {
            (Point::Vertex(v), Direction::Edge(e)) => {
                let edge = self.edge(e);
                if edge.lower == v {
                    edge.upper
                } else {
                    edge.lower
                }
            }
            (Point::Edge { edge, .. }, Direction::TowardUpper) => self.edge(edge).upper,
            (Point::Edge { edge, .. }, Direction::TowardLower) => self.edge(edge).lower,
            _ => panic!("direction does not belong to the anchor"),
        }
    }
}

/// The class `[representative]_anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangentClassAtom {
    pub anchor: Point,
    pub representative: Point,
    pub direction: Direction,
}

impl TangentClassAtom {
    /// `x ∈ [a]_t` iff `x ≠ t` and `t ∉ [a, x]`.
    pub fn contains(&self, skeleton: &TreeSkeleton, x: &Point) -> bool {
        *x != self.anchor && !skeleton.in_segment(&self.anchor, &self.representative, x)
    }

    /// Membership through the stored direction.
    pub fn contains_by_direction(&self, skeleton: &TreeSkeleton, x: &Point) -> bool {
        skeleton.direction_from(&self.anchor, x) == Some(self.direction)
    }

    /// Point-set equality; decided combinatorially for a shared anchor.
    pub fn same_set(&self, other: &TangentClassAtom) -> bool {
        self.anchor == other.anchor && self.direction == other.direction
    }

    /// Human-readable direction, e.g. `toward b`.
    pub fn direction_label(&self, skeleton: &TreeSkeleton) -> String {
        format!(
            "toward {}",
            skeleton.name(skeleton.direction_target(&self.anchor, self.direction))
        )
    }
}

/// All tangent classes at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSpace {
    pub anchor: Point,
    pub classes: Vec<TangentClassAtom>,
}

impl TangentSpace {
    pub fn class_of(&self, skeleton: &TreeSkeleton, x: &Point) -> Option<&TangentClassAtom> {
        let direction = skeleton.direction_from(&self.anchor, x)?;
        self.classes.iter().find(|c| c.direction == direction)
    }
}

/// `a ∼_t b`.
pub fn same_class(
    skeleton: &TreeSkeleton,
    a: &Point,
    b: &Point,
    t: &Point,
) -> Result<bool, TangentError> {
    if a == t || b == t {
        return Err(TangentError::AtAnchor);
    }
    Ok(!skeleton.in_segment(t, a, b))
}

/// `[a]_t`.
pub fn tangent_class(
    skeleton: &TreeSkeleton,
    a: &Point,
    t: &Point,
) -> Result<TangentClassAtom, TangentError> {
    let direction = skeleton
        .direction_from(t, a)
        .ok_or(TangentError::AtAnchor)?;
    Ok(TangentClassAtom {
        anchor: *t,
        representative: *a,
        direction,
    })
}

/// One class per direction at `t`; each represented by the neighbouring
/// vertex in that direction.
pub fn tangent_space(skeleton: &TreeSkeleton, t: &Point) -> TangentSpace {
    let directions: Vec<Direction> = match *t {
        Point::Vertex(v) => skeleton
            .incident_edges(v)
            .into_iter()
            .map(Direction::Edge)
            .collect(),
        Point::Edge { .. } => vec![Direction::TowardLower, Direction::TowardUpper],
    };
    let classes = directions
        .into_iter()
        .map(|direction| TangentClassAtom {
            anchor: *t,
            representative: Point::Vertex(skeleton.direction_target(t, direction)),
            direction,
        })
        .collect();
    TangentSpace {
        anchor: *t,
        classes,
    }
}

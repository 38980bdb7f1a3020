//! Partial orders on the realization.
//!
//! The skeleton root induces the base order: `a ⪯ b` iff `a` lies on the
//! root path of `b`. An [`OrderView`] based at any point `t` realizes the
//! re-rooted order `a ⪯_t b  ⟺  a ∈ [t, b]`. Everything reduces to three
//! root-order primitives on the skeleton: comparison, meet, and the median
//! of three points.

use std::sync::Arc;

use thiserror::Error;

use super::point::Point;
use super::skeleton::TreeSkeleton;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("point is not in the realization of the skeleton")]
    ForeignPoint,
    #[error("infimum of an empty set")]
    EmptySet,
}

impl TreeSkeleton {
    /// `a ⪯ b` in the order rooted at the skeleton root.
    pub fn root_leq(&self, a: &Point, b: &Point) -> bool {
        self.is_ancestor(self.key_vertex(a), self.key_vertex(b))
            && self.point_depth(a) <= self.point_depth(b)
    }

    /// Meet in the root order, i.e. where the root paths of `a` and `b`
    /// separate.
    pub fn root_meet(&self, a: &Point, b: &Point) -> Point {
        let w = self.lca(self.key_vertex(a), self.key_vertex(b));
        self.meet_below(w, a, b)
    }

    /// Same as [`root_meet`](Self::root_meet) but always by parent climbing,
    /// ignoring any attached index.
    pub fn root_meet_by_climbing(&self, a: &Point, b: &Point) -> Point {
        let w = self.lca_by_climbing(self.key_vertex(a), self.key_vertex(b));
        self.meet_below(w, a, b)
    }

    fn meet_below(&self, w: crate::tree::VertexId, a: &Point, b: &Point) -> Point {
        let h = self
            .point_depth(a)
            .min(self.point_depth(b))
            .min(self.depth(w));
        self.point_at_depth(w, h)
    }

    /// Arc-length distance along the unique path.
    pub fn distance(&self, a: &Point, b: &Point) -> Q {
        let m = self.root_meet(a, b);
        self.point_depth(a) + self.point_depth(b) - self.point_depth(&m) * 2
    }

    /// Membership of `c` in the closed segment `[a, b]`:
    /// `a ∧ b ⪯ c` and (`c ⪯ a` or `c ⪯ b`).
    pub fn in_segment(&self, c: &Point, a: &Point, b: &Point) -> bool {
        let m = self.root_meet(a, b);
        self.root_leq(&m, c) && (self.root_leq(c, a) || self.root_leq(c, b))
    }

    /// The unique point common to `[a,b]`, `[b,c]` and `[a,c]`: the deepest
    /// of the three pairwise root meets.
    pub fn median(&self, a: &Point, b: &Point, c: &Point) -> Point {
        [
            self.root_meet(a, b),
            self.root_meet(b, c),
            self.root_meet(a, c),
        ]
        .into_iter()
        .max_by(|x, y| self.point_depth(x).cmp(&self.point_depth(y)))
        .unwrap()
    }
}

/// A skeleton together with an order base `t`, realizing `⪯_t`.
#[derive(Debug, Clone)]
pub struct OrderView {
    skeleton: Arc<TreeSkeleton>,
    base: Point,
}

impl PartialEq for OrderView {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && (Arc::ptr_eq(&self.skeleton, &other.skeleton) || self.skeleton == other.skeleton)
    }
}

impl Eq for OrderView {}

impl OrderView {
    pub fn new(skeleton: Arc<TreeSkeleton>, base: Point) -> Result<Self, OrderError> {
        if !skeleton.contains_point(&base) {
            return Err(OrderError::ForeignPoint);
        }
        Ok(OrderView { skeleton, base })
    }

    /// The view realizing the original order `⪯`.
    pub fn rooted(skeleton: Arc<TreeSkeleton>) -> Self {
        let base = Point::Vertex(skeleton.root());
        OrderView { skeleton, base }
    }

    /// The view of the same skeleton based at `t`. The skeleton is shared,
    /// never subdivided.
    pub fn reroot(&self, t: Point) -> Result<Self, OrderError> {
        OrderView::new(self.skeleton.clone(), t)
    }

    pub fn skeleton(&self) -> &TreeSkeleton {
        &self.skeleton
    }

    pub fn shared_skeleton(&self) -> &Arc<TreeSkeleton> {
        &self.skeleton
    }

    pub fn base(&self) -> Point {
        self.base
    }

    pub fn is_rooted_at_skeleton_root(&self) -> bool {
        self.base == Point::Vertex(self.skeleton.root())
    }

    /// `a ⪯_t b`, i.e. `a ∈ [t, b]`.
    pub fn leq(&self, a: &Point, b: &Point) -> bool {
        if self.is_rooted_at_skeleton_root() {
            self.skeleton.root_leq(a, b)
        } else {
            self.skeleton.in_segment(a, &self.base, b)
        }
    }

    pub fn lt(&self, a: &Point, b: &Point) -> bool {
        a != b && self.leq(a, b)
    }

    /// Greatest lower bound: where the paths from the base to `a` and to
    /// `b` separate.
    pub fn meet(&self, a: &Point, b: &Point) -> Point {
        if self.is_rooted_at_skeleton_root() {
            self.skeleton.root_meet(a, b)
        } else {
            self.skeleton.median(&self.base, a, b)
        }
    }

    /// Infimum of a non-empty finite set, as a left fold of [`meet`](Self::meet).
    pub fn infimum<'a, I>(&self, points: I) -> Result<Point, OrderError>
    where
        I: IntoIterator<Item = &'a Point>,
    {
        let mut iter = points.into_iter();
        let first = *iter.next().ok_or(OrderError::EmptySet)?;
        Ok(iter.fold(first, |acc, p| self.meet(&acc, p)))
    }

    /// Distance from the base.
    pub fn height(&self, p: &Point) -> Q {
        self.skeleton.distance(&self.base, p)
    }
}

/// Convenience for `OrderView::new(skeleton, t)`.
pub fn reroot(skeleton: &Arc<TreeSkeleton>, t: Point) -> Result<OrderView, OrderError> {
    OrderView::new(skeleton.clone(), t)
}

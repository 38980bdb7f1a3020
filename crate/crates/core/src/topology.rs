//! Exact deciders for upper sets, inaccessibility by directed joins and
//! Scott-openness, plus constructive witnesses for weak-tree openness and
//! the Hausdorff property.
//!
//! In a tree view every directed set is a chain: two elements of a
//! directed set have a common upper bound `u`, and both lie in the totally
//! ordered segment from the base to `u`. A [`DirectedChain`] is therefore
//! a finite increasing list, optionally followed by a tail converging from
//! below to an unattained supremum (`limit`).
//!
//! Scott-openness is decided by the predecessor characterization: a region
//! is Scott-open iff it is an upper set and each member other than the
//! base has a strict predecessor in the region. Because membership is
//! constant on the sub-arcs of the cut decomposition, "has a predecessor"
//! reduces to membership of the sub-arc immediately below the point.

use std::sync::Arc;

use thiserror::Error;

use crate::rational::Q;
use crate::region::{is_disjoint, is_subset, Region};
use crate::tangent::{tangent_class, TangentClassAtom};
use crate::tree::{OrderView, Point, TreeSkeleton};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("chain is empty")]
    EmptyChain,
    #[error("chain is not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("chain limit is not strictly above every element")]
    LimitNotAbove,
    #[error("region is not Scott-open in this view")]
    NotScottOpen,
    #[error("point is not a member of the region")]
    NotMember,
    #[error("point is the view base; no strict predecessor exists")]
    AtBase,
    #[error("inclusion of the tangent class in the region failed")]
    InclusionFailed,
    #[error("points coincide")]
    SamePoint,
}

/// A chain in a view, optionally with an unattained supremum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedChain {
    pub elements: Vec<Point>,
    pub limit: Option<Point>,
}

impl DirectedChain {
    pub fn attained(elements: Vec<Point>) -> Self {
        DirectedChain {
            elements,
            limit: None,
        }
    }

    pub fn with_limit(elements: Vec<Point>, limit: Point) -> Self {
        DirectedChain {
            elements,
            limit: Some(limit),
        }
    }

    pub fn validate(&self, view: &OrderView) -> Result<(), TopologyError> {
        if self.elements.is_empty() && self.limit.is_none() {
            return Err(TopologyError::EmptyChain);
        }
        for (i, w) in self.elements.windows(2).enumerate() {
            if !view.lt(&w[0], &w[1]) {
                return Err(TopologyError::NotIncreasing(i + 1));
            }
        }
        if let Some(limit) = &self.limit {
            if limit == &view.base() || !self.elements.iter().all(|e| view.lt(e, limit)) {
                return Err(TopologyError::LimitNotAbove);
            }
        }
        Ok(())
    }

    /// The supremum: the limit if present, else the last element.
    pub fn supremum(&self) -> Point {
        self.limit
            .or_else(|| self.elements.last().copied())
            .expect("validated chain")
    }
}

/// The cut decomposition used by all deciders for `(region, view)`.
fn decider_cuts(region: &Region, view: &OrderView, extra: &[Point]) -> Vec<Point> {
    let mut pts = vec![view.base()];
    pts.extend_from_slice(extra);
    region.cut_points_with(&pts)
}

/// The nearest cut point strictly below `p` in `view`. Exists whenever `p`
/// is not the base, since the base is itself a cut point.
fn nearest_cut_below(view: &OrderView, p: &Point, cuts: &[Point]) -> Option<Point> {
    cuts.iter()
        .filter(|q| view.lt(q, p))
        .max_by(|x, y| view.height(x).cmp(&view.height(y)))
        .copied()
}

/// Membership of the points immediately below `p` (the germ of the region
/// along the segment from the base to `p`).
fn member_just_below(region: &Region, view: &OrderView, p: &Point, cuts: &[Point]) -> bool {
    let q = nearest_cut_below(view, p, cuts).expect("point above the base");
    let t = view.skeleton();
    let mid = t.point_along(p, &q, t.distance(p, &q) / Q::from_integer(2));
    region.member(&mid)
}

/// A pair `(x, y)` with `x ∈ region`, `x ⪯ y`, `y ∉ region`, if any.
pub fn upper_set_violation(region: &Region, view: &OrderView) -> Option<(Point, Point)> {
    let cuts = decider_cuts(region, view, &[]);
    let inside: Vec<bool> = cuts.iter().map(|x| region.member(x)).collect();
    for (i, x) in cuts.iter().enumerate() {
        if !inside[i] {
            continue;
        }
        for (j, y) in cuts.iter().enumerate() {
            if !inside[j] && view.leq(x, y) {
                return Some((*x, *y));
            }
        }
    }
    None
}

pub fn is_upper_set(region: &Region, view: &OrderView) -> bool {
    upper_set_violation(region, view).is_none()
}

/// Checks the definition directly on the supplied chains: whenever a
/// chain's supremum lies in the region, some member of the chain must.
///
/// A chain with a limit stands for its listed elements followed by a tail
/// converging to the limit from below. The tail is sampled by one concrete
/// point closer to the limit than `1 / (2·L)`, where `L` is the lcm of the
/// denominators of every root depth the region can break at. Two distinct
/// breakpoints are at least `1/L` apart, so the sample and every later tail
/// point share membership.
pub fn is_inaccessible_by_directed_joins(
    region: &Region,
    view: &OrderView,
    chains: &[DirectedChain],
) -> Result<bool, TopologyError> {
    for chain in chains {
        chain.validate(view)?;
        let sup = chain.supremum();
        if !region.member(&sup) {
            continue;
        }
        let hit = chain.elements.iter().any(|e| region.member(e))
            || chain
                .limit
                .is_some_and(|limit| region.member(&tail_sample(region, view, chain, &limit)));
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tail_sample(region: &Region, view: &OrderView, chain: &DirectedChain, limit: &Point) -> Point {
    use num_integer::Integer;

    let sk = view.skeleton();
    let from = chain.elements.last().copied().unwrap_or(view.base());
    let mut lcm: i128 = 1;
    let mut fold = |q: Q| lcm = lcm.lcm(q.denom());
    for v in sk.vertices() {
        fold(sk.depth(v));
    }
    for p in region
        .anchors()
        .iter()
        .chain([view.base(), region.view().base(), *limit, from].iter())
    {
        fold(sk.point_depth(p));
    }
    let step = Q::new(1, 2 * lcm).min(sk.distance(&from, limit) / Q::from_integer(2));
    sk.point_along(limit, &from, step)
}

/// A member other than the base with no strict predecessor in the region.
pub fn missing_predecessor(region: &Region, view: &OrderView) -> Option<Point> {
    let cuts = decider_cuts(region, view, &[]);
    cuts.iter()
        .find(|p| {
            **p != view.base() && region.member(p) && !member_just_below(region, view, p, &cuts)
        })
        .copied()
}

pub fn is_scott_open(region: &Region, view: &OrderView) -> bool {
    is_upper_set(region, view) && missing_predecessor(region, view).is_none()
}

/// The exhaustive chain family for `(region, view)`: for every cut point
/// `p`, chains ending in `p` (attained) and chains converging to `p`
/// (unattained), built from the cut points below `p` as singletons and as
/// runs of up to five consecutive predecessors.
pub fn chain_family(region: &Region, view: &OrderView) -> Vec<DirectedChain> {
    let cuts = decider_cuts(region, view, &[]);
    let mut family = Vec::new();
    for p in &cuts {
        let mut below: Vec<Point> = cuts.iter().filter(|q| view.lt(q, p)).copied().collect();
        below.sort_by_key(|q| view.height(q));
        let mut windows: Vec<Vec<Point>> = Vec::new();
        for len in 0..=5.min(below.len()) {
            windows.push(below[below.len() - len..].to_vec());
        }
        for q in &below {
            windows.push(vec![*q]);
        }
        windows.sort();
        windows.dedup();
        for w in windows {
            let mut attained = w.clone();
            attained.push(*p);
            family.push(DirectedChain::attained(attained));
            if *p != view.base() {
                family.push(DirectedChain::with_limit(w, *p));
            }
        }
    }
    family
}

/// For a Scott-open `region` and a member `a` above the base, a point `t`
/// strictly below `a` with `[a]_t ⊆ region`. Takes the nearest breakpoint
/// (vertex, anchor or base) below `a` when it is a member, otherwise the
/// midpoint of the sub-arc immediately below `a`.
pub fn weak_open_witness(
    region: &Region,
    a: &Point,
    view: &OrderView,
) -> Result<Point, TopologyError> {
    if !is_scott_open(region, view) {
        return Err(TopologyError::NotScottOpen);
    }
    witness_below(region, a, view)
}

/// [`weak_open_witness`] for every member cut point other than the base,
/// deciding Scott-openness once.
pub fn weak_open_witnesses(
    region: &Region,
    view: &OrderView,
) -> Result<Vec<(Point, Point)>, TopologyError> {
    if !is_scott_open(region, view) {
        return Err(TopologyError::NotScottOpen);
    }
    decider_cuts(region, view, &[])
        .into_iter()
        .filter(|a| *a != view.base() && region.member(a))
        .map(|a| witness_below(region, &a, view).map(|t| (a, t)))
        .collect()
}

fn witness_below(region: &Region, a: &Point, view: &OrderView) -> Result<Point, TopologyError> {
    if !region.member(a) {
        return Err(TopologyError::NotMember);
    }
    if *a == view.base() {
        return Err(TopologyError::AtBase);
    }
    let mut breakpoints = region.anchors();
    breakpoints.extend(view.skeleton().vertex_points());
    breakpoints.push(view.base());
    breakpoints.push(region.view().base());
    let q = nearest_cut_below(view, a, &breakpoints).expect("a is above the base");
    let t = if region.member(&q) {
        q
    } else {
        let sk = view.skeleton();
        sk.point_along(a, &q, sk.distance(a, &q) / Q::from_integer(2))
    };
    if !region.member(&t) {
        return Err(TopologyError::InclusionFailed);
    }
    let class =
        tangent_class(view.skeleton(), a, &t).map_err(|_| TopologyError::InclusionFailed)?;
    if !is_subset(&Region::from_class(region.view(), class), region) {
        return Err(TopologyError::InclusionFailed);
    }
    Ok(t)
}

/// Disjoint weak-tree-open regions `([p]_m, [q]_m)` separating `p` and
/// `q`, where `m` is the arc-length midpoint of `[p, q]`.
pub fn hausdorff_witness(
    skeleton: &Arc<TreeSkeleton>,
    p: &Point,
    q: &Point,
) -> Result<(Region, Region), TopologyError> {
    if p == q {
        return Err(TopologyError::SamePoint);
    }
    let m = skeleton.point_along(p, q, skeleton.distance(p, q) / Q::from_integer(2));
    let view = OrderView::rooted(skeleton.clone());
    let atom = |x: &Point| -> TangentClassAtom {
        tangent_class(skeleton, x, &m).expect("midpoint differs from both ends")
    };
    Ok((
        Region::from_class(&view, atom(p)),
        Region::from_class(&view, atom(q)),
    ))
}

/// Checks that a Hausdorff witness pair separates `p` and `q`.
pub fn separates(pair: &(Region, Region), p: &Point, q: &Point) -> bool {
    pair.0.member(p) && pair.1.member(q) && is_disjoint(&pair.0, &pair.1)
}

/// For distinct `t` and `s`, a point `a ∼_t s` such that `[a]_t` is
/// Scott-open under base `t` but not an upper set under base `s`. Searches
/// the cut points of the skeleton refined at `t` and `s`.
pub fn scott_views_differ_witness(
    skeleton: &Arc<TreeSkeleton>,
    t: &Point,
    s: &Point,
) -> Option<Point> {
    if t == s {
        return None;
    }
    let view_t = OrderView::new(skeleton.clone(), *t).ok()?;
    let view_s = OrderView::new(skeleton.clone(), *s).ok()?;
    skeleton.cut_points(&[*t, *s]).into_iter().find(|a| {
        if a == t || crate::tangent::same_class(skeleton, a, s, t) != Ok(true) {
            return false;
        }
        let region = match Region::class(&view_t, *a, *t) {
            Ok(r) => r,
            Err(_) => return false,
        };
        is_scott_open(&region, &view_t) && !is_upper_set(&region, &view_s)
    })
}

//! Brute-force reference computations.
//!
//! Everything here is derived from vertex-to-vertex distances obtained by
//! breadth-first search over the undirected edge list. None of it uses the
//! root orientation, parent pointers, depths or the LCA machinery of
//! [`TreeSkeleton`], so it checks those independently.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::rational::Q;
use crate::tree::{Point, TreeSkeleton};

pub struct Oracle<'a> {
    skeleton: &'a TreeSkeleton,
    vertex_dist: Vec<Vec<Q>>,
}

impl<'a> Oracle<'a> {
    pub fn new(skeleton: &'a TreeSkeleton) -> Self {
        let n = skeleton.vertex_count();
        let mut adjacency: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n];
        for e in skeleton.edges() {
            adjacency[e.lower.index()].push((e.upper.index(), e.length));
            adjacency[e.upper.index()].push((e.lower.index(), e.length));
        }
        let vertex_dist = (0..n)
            .map(|src| {
                let mut dist = vec![None; n];
                dist[src] = Some(Q::zero());
                let mut queue = VecDeque::from([src]);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u].unwrap();
                    for &(w, len) in &adjacency[u] {
                        if dist[w].is_none() {
                            dist[w] = Some(du + len);
                            queue.push_back(w);
                        }
                    }
                }
                dist.into_iter().map(|d| d.unwrap()).collect()
            })
            .collect();
        Oracle {
            skeleton,
            vertex_dist,
        }
    }

    /// Ways to leave `p` towards the skeleton: `(vertex index, distance)`.
    fn exits(&self, p: &Point) -> Vec<(usize, Q)> {
        match *p {
            Point::Vertex(v) => vec![(v.index(), Q::zero())],
            Point::Edge { edge, offset } => {
                let e = self.skeleton.edge(edge);
                vec![
                    (e.lower.index(), offset),
                    (e.upper.index(), e.length - offset),
                ]
            }
        }
    }

    pub fn distance(&self, a: &Point, b: &Point) -> Q {
        if let (
            Point::Edge {
                edge: ea,
                offset: oa,
            },
            Point::Edge {
                edge: eb,
                offset: ob,
            },
        ) = (a, b)
        {
            if ea == eb {
                return if oa <= ob { ob - oa } else { oa - ob };
            }
        }
        let mut best: Option<Q> = None;
        for (u, du) in self.exits(a) {
            for (w, dw) in self.exits(b) {
                let d = du + self.vertex_dist[u][w] + dw;
                best = Some(best.map_or(d, |b: Q| b.min(d)));
            }
        }
        best.unwrap()
    }

    /// `c ∈ [a, b]` iff `c` lies on a geodesic from `a` to `b`.
    pub fn on_segment(&self, c: &Point, a: &Point, b: &Point) -> bool {
        self.distance(a, c) + self.distance(c, b) == self.distance(a, b)
    }

    /// `a ⪯_base b` iff `a ∈ [base, b]`.
    pub fn leq(&self, base: &Point, a: &Point, b: &Point) -> bool {
        self.on_segment(a, base, b)
    }

    /// The greatest common lower bound of `a` and `b` among `candidates`.
    pub fn meet(&self, base: &Point, a: &Point, b: &Point, candidates: &[Point]) -> Option<Point> {
        candidates
            .iter()
            .filter(|c| self.leq(base, c, a) && self.leq(base, c, b))
            .max_by(|x, y| self.distance(base, x).cmp(&self.distance(base, y)))
            .copied()
    }

    /// Greatest lower bound of a set among `candidates`.
    pub fn infimum(&self, base: &Point, set: &[Point], candidates: &[Point]) -> Option<Point> {
        candidates
            .iter()
            .filter(|c| set.iter().all(|s| self.leq(base, c, s)))
            .max_by(|x, y| self.distance(base, x).cmp(&self.distance(base, y)))
            .copied()
    }

    pub fn same_class(&self, a: &Point, b: &Point, t: &Point) -> bool {
        !self.on_segment(t, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    #[test]
    fn oracle_y_tree_examples() {
        let t = parse_tree("((a:1,b:2)v:1)r;").unwrap();
        let o = Oracle::new(&t);
        let p = |s: &str| t.parse_point(s).unwrap();
        assert_eq!(o.distance(&p("a"), &p("b")), Q::from_integer(3));
        assert_eq!(o.distance(&p("v-b@1/2"), &p("r-v@1/2")), Q::from_integer(1));
        assert_eq!(o.distance(&p("v-b@1/2"), &p("v-b@3/2")), Q::from_integer(1));
        // base a: path a -> b is a-v-b
        assert!(o.leq(&p("a"), &p("v"), &p("b")));
        let cuts = t.cut_points(&[p("a"), p("r"), p("b")]);
        assert_eq!(o.meet(&p("a"), &p("r"), &p("b"), &cuts), Some(p("v")));
        let interior = p("v-b@1");
        let cuts = t.cut_points(&[interior, p("a"), p("r")]);
        assert_eq!(o.meet(&interior, &p("a"), &p("r"), &cuts), Some(p("v")));
        assert!(o.same_class(&p("b"), &p("v-b@3/2"), &interior));
    }
}

//! Finite edge-weighted tree skeletons with a distinguished root.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::lca::LcaIndex;
use crate::rational::{format_rational, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An edge oriented away from the root: `lower` is the root-closer endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub lower: VertexId,
    pub upper: VertexId,
    pub length: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("no root declared")]
    MissingRoot,
    #[error("more than one root declared (`{0}` and `{1}`)")]
    MultipleRoots(String, String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge `{0}`-`{1}` closes a cycle")]
    Cycle(String, String),
    #[error("edge `{0}`-`{1}` has non-positive length {2}")]
    NonPositiveLength(String, String, String),
    #[error("graph is disconnected: `{0}` is unreachable from the root")]
    Disconnected(String),
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
}

/// Immutable rooted tree skeleton. Vertex ids follow the lexicographic
/// order of vertex names, so declaration order never affects identity.
#[derive(Debug, Clone)]
pub struct TreeSkeleton {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    root: VertexId,
    edges: Vec<Edge>,
    parent: Vec<Option<VertexId>>,
    edge_above: Vec<Option<EdgeId>>,
    depth: Vec<Q>,
    hops: Vec<u32>,
    children: Vec<Vec<VertexId>>,
    lca_index: Option<LcaIndex>,
}

impl PartialEq for TreeSkeleton {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.root == other.root && self.edges == other.edges
    }
}

impl Eq for TreeSkeleton {}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl TreeSkeleton {
    /// Builds a skeleton from a root name, extra isolated vertex names and
    /// an undirected edge list. Edge endpoints are declared implicitly.
    pub fn new<V, E>(root: &str, vertices: V, edges: E) -> Result<Self, TreeError>
    where
        V: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, Q)>,
    {
        let edges: Vec<(String, String, Q)> = edges.into_iter().collect();
        let mut all: BTreeSet<String> = vertices.into_iter().collect();
        all.insert(root.to_string());
        for (a, b, _) in &edges {
            all.insert(a.clone());
            all.insert(b.clone());
        }
        if let Some(bad) = all.iter().find(|n| !valid_name(n)) {
            return Err(TreeError::InvalidName(bad.clone()));
        }
        let names: Vec<String> = all.into_iter().collect();
        let index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), VertexId(i as u32)))
            .collect();
        let n = names.len();

        let mut seen = HashSet::new();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut adjacency: Vec<Vec<(VertexId, Q)>> = vec![Vec::new(); n];
        for (a, b, length) in &edges {
            if !length.is_positive() {
                return Err(TreeError::NonPositiveLength(
                    a.clone(),
                    b.clone(),
                    format_rational(length),
                ));
            }
            let (ia, ib) = (index[a], index[b]);
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(TreeError::DuplicateEdge(a.clone(), b.clone()));
            }
            let (ra, rb) = (find(&mut uf, ia.index()), find(&mut uf, ib.index()));
            if ra == rb {
                return Err(TreeError::Cycle(a.clone(), b.clone()));
            }
            uf[ra] = rb;
            adjacency[ia.index()].push((ib, *length));
            adjacency[ib.index()].push((ia, *length));
        }

        let root = index[root];
        let mut parent = vec![None; n];
        let mut depth = vec![Q::zero(); n];
        let mut hops = vec![0u32; n];
        let mut children = vec![Vec::new(); n];
        let mut above_len = vec![Q::zero(); n];
        let mut visited = vec![false; n];
        visited[root.index()] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut next: Vec<(VertexId, Q)> = adjacency[v.index()]
                .iter()
                .filter(|(w, _)| !visited[w.index()])
                .cloned()
                .collect();
            next.sort();
            for (w, len) in next {
                visited[w.index()] = true;
                parent[w.index()] = Some(v);
                depth[w.index()] = depth[v.index()] + len;
                hops[w.index()] = hops[v.index()] + 1;
                above_len[w.index()] = len;
                children[v.index()].push(w);
                queue.push_back(w);
            }
        }
        if let Some(i) = visited.iter().position(|v| !v) {
            return Err(TreeError::Disconnected(names[i].clone()));
        }

        let mut edge_list: Vec<Edge> = (0..n)
            .filter_map(|i| {
                parent[i].map(|p| Edge {
                    lower: p,
                    upper: VertexId(i as u32),
                    length: above_len[i],
                })
            })
            .collect();
        edge_list.sort_by_key(|e| (e.lower, e.upper));
        let mut edge_above = vec![None; n];
        for (i, e) in edge_list.iter().enumerate() {
            edge_above[e.upper.index()] = Some(EdgeId(i as u32));
        }

        Ok(TreeSkeleton {
            names,
            index,
            root,
            edges: edge_list,
            parent,
            edge_above,
            depth,
            hops,
            children,
            lca_index: None,
        })
    }

    /// Returns the skeleton with an Euler-tour LCA index attached.
    pub fn with_lca_index(mut self) -> Self {
        self.lca_index = Some(LcaIndex::build(self.root, &self.children, &self.hops));
        self
    }

    pub fn has_lca_index(&self) -> bool {
        self.lca_index.is_some()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.index()]
    }

    pub fn edge_above(&self, v: VertexId) -> Option<EdgeId> {
        self.edge_above[v.index()]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.index()]
    }

    /// Arc-length distance from the root.
    pub fn depth(&self, v: VertexId) -> Q {
        self.depth[v.index()]
    }

    /// Number of edges between the root and `v`.
    pub fn hops(&self, v: VertexId) -> u32 {
        self.hops[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.children[v.index()].len() + usize::from(self.parent[v.index()].is_some())
    }

    /// Edges incident to `v`: the edge above it first, then child edges.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edge_above(v)
            .into_iter()
            .chain(self.children(v).iter().filter_map(|&c| self.edge_above(c)))
            .collect()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        if self.parent(b) == Some(a) {
            self.edge_above(b)
        } else if self.parent(a) == Some(b) {
            self.edge_above(a)
        } else {
            None
        }
    }

    pub fn edge_label(&self, id: EdgeId) -> String {
        let e = self.edge(id);
        format!("{}-{}", self.name(e.lower), self.name(e.upper))
    }

    /// Lowest common ancestor, through the index when one is attached.
    pub fn lca(&self, u: VertexId, v: VertexId) -> VertexId {
        match &self.lca_index {
            Some(index) => index.lca(u, v),
            None => self.lca_by_climbing(u, v),
        }
    }

    /// Lowest common ancestor by explicit parent climbing.
    pub fn lca_by_climbing(&self, mut u: VertexId, mut v: VertexId) -> VertexId {
        while self.hops(u) > self.hops(v) {
            u = self.parent(u).unwrap();
        }
        while self.hops(v) > self.hops(u) {
            v = self.parent(v).unwrap();
        }
        while u != v {
            u = self.parent(u).unwrap();
            v = self.parent(v).unwrap();
        }
        u
    }

    /// True iff `u` is `v` or an ancestor of `v`.
    pub fn is_ancestor(&self, u: VertexId, mut v: VertexId) -> bool {
        while self.hops(v) > self.hops(u) {
            v = self.parent(v).unwrap();
        }
        u == v
    }

    /// The child of `v` whose subtree contains the proper descendant `w`.
    pub fn child_toward(&self, v: VertexId, mut w: VertexId) -> VertexId {
        debug_assert!(v != w && self.is_ancestor(v, w));
        while self.parent(w) != Some(v) {
            w = self.parent(w).unwrap();
        }
        w
    }

    pub fn max_depth(&self) -> Q {
        self.depth.iter().copied().max().unwrap_or_else(Q::zero)
    }
}

impl fmt::Display for TreeSkeleton {
    /// Serializes to the line-oriented tree file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.vertices() {
            if v == self.root {
                writeln!(f, "vertex {} root", self.name(v))?;
            } else {
                writeln!(f, "vertex {}", self.name(v))?;
            }
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {} {} {}",
                self.name(e.lower),
                self.name(e.upper),
                format_rational(&e.length)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: &str, b: &str, n: i128) -> (String, String, Q) {
        (a.into(), b.into(), Q::from_integer(n))
    }

    fn y_tree() -> TreeSkeleton {
        TreeSkeleton::new("r", [], [e("r", "v", 1), e("v", "a", 1), e("v", "b", 2)]).unwrap()
    }

    #[test]
    fn orients_edges_from_root() {
        let t = y_tree();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 3);
        let v = t.vertex("v").unwrap();
        let b = t.vertex("b").unwrap();
        assert_eq!(t.parent(b), Some(v));
        assert_eq!(t.depth(b), Q::from_integer(3));
        assert_eq!(t.hops(b), 2);
        assert_eq!(t.degree(v), 3);
        assert_eq!(t.edge_label(t.edge_above(b).unwrap()), "v-b");
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(
            TreeSkeleton::new("r", [], [e("r", "v", 1), e("v", "r", 2)]),
            Err(TreeError::DuplicateEdge(..))
        ));
        assert!(matches!(
            TreeSkeleton::new("r", [], [e("r", "a", 1), e("a", "b", 1), e("b", "r", 1)]),
            Err(TreeError::Cycle(..))
        ));
        assert!(matches!(
            TreeSkeleton::new("r", [], [e("r", "a", 1), e("x", "y", 1)]),
            Err(TreeError::Disconnected(..))
        ));
        assert!(matches!(
            TreeSkeleton::new("r", [], [e("r", "a", 0)]),
            Err(TreeError::NonPositiveLength(..))
        ));
        assert!(matches!(
            TreeSkeleton::new("r", [], [e("r", "r", 1)]),
            Err(TreeError::Cycle(..))
        ));
    }

    #[test]
    fn declaration_order_is_irrelevant() {
        let other =
            TreeSkeleton::new("r", [], [e("v", "b", 2), e("a", "v", 1), e("v", "r", 1)]).unwrap();
        assert_eq!(y_tree(), other);
        assert_eq!(y_tree().to_string(), other.to_string());
    }

    #[test]
    fn lca_index_matches_climbing() {
        let t = y_tree().with_lca_index();
        for u in t.vertices() {
            for v in t.vertices() {
                assert_eq!(t.lca(u, v), t.lca_by_climbing(u, v));
            }
        }
    }
}

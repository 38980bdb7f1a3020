//! Euler-tour / sparse-table lowest common ancestor index.
//!
//! O(n log n) build, O(1) query. Used as an accelerated alternative to the
//! parent-climbing LCA in [`TreeSkeleton`](super::TreeSkeleton); both must
//! agree on every query.

use super::skeleton::VertexId;

#[derive(Debug, Clone)]
pub struct LcaIndex {
    first: Vec<usize>,
    // sparse[k][i] = tour position with minimal hop depth in [i, i + 2^k)
    sparse: Vec<Vec<usize>>,
    tour: Vec<VertexId>,
    tour_hops: Vec<u32>,
}

impl LcaIndex {
    pub fn build(root: VertexId, children: &[Vec<VertexId>], hops: &[u32]) -> Self {
        let n = children.len();
        let mut tour = Vec::with_capacity(2 * n);
        let mut first = vec![usize::MAX; n];
        // iterative DFS: (vertex, next child index)
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == 0 {
                first[v.index()] = tour.len();
            }
            tour.push(v);
            if let Some(&c) = children[v.index()].get(*next) {
                *next += 1;
                stack.push((c, 0));
            } else {
                stack.pop();
            }
        }
        let tour_hops: Vec<u32> = tour.iter().map(|v| hops[v.index()]).collect();

        let len = tour.len();
        let mut sparse = vec![(0..len).collect::<Vec<_>>()];
        let mut width = 1;
        while 2 * width <= len {
            let prev = sparse.last().unwrap();
            let row = (0..=len - 2 * width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if tour_hops[a] <= tour_hops[b] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            sparse.push(row);
            width *= 2;
        }
        LcaIndex {
            first,
            sparse,
            tour,
            tour_hops,
        }
    }

    pub fn lca(&self, u: VertexId, v: VertexId) -> VertexId {
        let (mut l, mut r) = (self.first[u.index()], self.first[v.index()]);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let span = r - l + 1;
        let k = (usize::BITS - 1 - span.leading_zeros()) as usize;
        let a = self.sparse[k][l];
        let b = self.sparse[k][r + 1 - (1 << k)];
        if self.tour_hops[a] <= self.tour_hops[b] {
            self.tour[a]
        } else {
            self.tour[b]
        }
    }
}

use crate::error::{GraphError, Result};
use crate::vertexset::VertexSet;

/// Hard capacity: adjacency rows are single 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`, stored as one adjacency
/// bitmask row per vertex. Immutable after construction; "mutations" such as
/// [`Graph::with_edge`] return a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

/// An induced subgraph with its vertices re-compacted to `0..k`, plus the
/// mapping back to the labels of the graph it was cut from. Anything reported
/// to users (witnesses, trim logs) is translated through `to_original`.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_original[new_index] == original_label`, increasing.
    pub to_original: Vec<usize>,
}

impl InducedSubgraph {
    /// Translate a set of subgraph vertices back to original labels.
    pub fn originals(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_original[v]).collect()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, m: 0, adj: vec![VertexSet::empty(); n] })
    }

    /// Build from an edge list. Rejects loops and out-of-range endpoints;
    /// duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n)?;
        for &(u, v) in edges {
            g.add_edge_mut(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_mut(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
        Ok(())
    }

    /// A copy of this graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.add_edge_mut(u, v)?;
        Ok(g)
    }

    /// A copy with one extra vertex (index `n`) joined to `neighbors`.
    pub fn with_vertex(&self, neighbors: &[usize]) -> Result<Graph> {
        let mut g = Graph { n: self.n + 1, m: self.m, adj: self.adj.clone() };
        if g.n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n: g.n, max: MAX_VERTICES });
        }
        g.adj.push(VertexSet::empty());
        for &u in neighbors {
            g.add_edge_mut(u, self.n)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Full vertex set as a mask.
    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Borrow all adjacency rows (hot loops index this directly).
    #[inline]
    pub fn adj_rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of degree exactly 1.
    pub fn leaves(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Number of leaves; `ell(G)` in the invariant reports.
    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Vertices whose neighborhood induces a clique. Isolated vertices count
    /// vacuously.
    pub fn simplicial_vertices(&self) -> VertexSet {
        (0..self.n)
            .filter(|&v| {
                let nb = self.adj[v];
                nb.iter().all(|u| nb.without(u).is_subset_of(self.adj[u].with(u)))
            })
            .collect()
    }

    /// Vertices reachable from `start` while staying inside `within`.
    /// `start` must itself be in `within`.
    pub fn reachable_within(&self, start: usize, within: VertexSet) -> VertexSet {
        debug_assert!(within.contains(start));
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier.iter() {
                next = next.union(self.adj[v].intersect(within).minus(seen));
            }
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertex_set())
    }

    /// Components of the subgraph induced by `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(s) = left.min() {
            let comp = self.reachable_within(s, left);
            out.push(comp);
            left = left.minus(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.reachable_within(0, self.vertex_set()) == self.vertex_set()
    }

    /// Induced subgraph on `keep`, with vertices re-compacted to `0..keep.len()`
    /// in increasing label order. The mapping back is retained in the result.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<InducedSubgraph> {
        if let Some(v) = keep.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let to_original: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (new, &old) in to_original.iter().enumerate() {
            new_of[old] = new;
        }
        let mut g = Graph::edgeless(to_original.len())?;
        for (new_u, &old_u) in to_original.iter().enumerate() {
            for old_v in self.adj[old_u].intersect(keep).iter() {
                if old_v > old_u {
                    g.add_edge_mut(new_u, new_of[old_v])?;
                }
            }
        }
        Ok(InducedSubgraph { graph: g, to_original })
    }

    /// Delete a set of vertices; the remainder is re-compacted as in
    /// [`Graph::induced_subgraph`].
    pub fn delete_vertices(&self, remove: VertexSet) -> Result<InducedSubgraph> {
        self.induced_subgraph(self.vertex_set().minus(remove))
    }

    /// Disjoint union; part `i`'s vertices are shifted past the parts before it.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
        let n: usize = parts.iter().map(|g| g.n).sum();
        let mut g = Graph::edgeless(n)?;
        let mut base = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.add_edge_mut(base + u, base + v)?;
            }
            base += p.n;
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn construction_and_degree_sum() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 1)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3); // duplicate collapsed
        let degsum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(degsum, 2 * g.m());
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(GraphError::LoopEdge(0)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 7)]),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 3 })
        );
        assert!(matches!(
            Graph::edgeless(65),
            Err(GraphError::TooManyVertices { n: 65, max: 64 })
        ));
    }

    #[test]
    fn leaves_and_simplicial() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.leaves().to_vec(), vec![1, 2, 3]);
        assert_eq!(star.leaf_count(), 3);
        // In K1,3 the leaves are simplicial, the center is not.
        assert_eq!(star.simplicial_vertices().to_vec(), vec![1, 2, 3]);
        // In a complete graph every vertex is simplicial.
        assert_eq!(complete(5).simplicial_vertices().len(), 5);
        // Isolated vertex is vacuously simplicial.
        assert_eq!(Graph::edgeless(1).unwrap().simplicial_vertices().len(), 1);
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].to_vec(), vec![0, 1]);
        assert_eq!(comps[1].to_vec(), vec![2, 3]);
        assert_eq!(comps[2].to_vec(), vec![4]);
        assert!(!g.is_connected());
        assert!(path(6).is_connected());
        assert!(!Graph::edgeless(0).unwrap().is_connected());
    }

    #[test]
    fn induced_subgraph_compacts_and_maps_back() {
        let g = cycle(5);
        let keep: VertexSet = [0, 2, 3].into_iter().collect();
        let sub = g.induced_subgraph(keep).unwrap();
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.to_original, vec![0, 2, 3]);
        // Only edge among {0,2,3} in C5 is (2,3) -> compacted (1,2).
        assert_eq!(sub.graph.edges(), vec![(1, 2)]);
        let back = sub.originals([1, 2].into_iter().collect());
        assert_eq!(back.to_vec(), vec![2, 3]);
    }

    #[test]
    fn delete_vertices_matches_induced_complement() {
        let g = complete(4);
        let cut = g.delete_vertices(VertexSet::singleton(1)).unwrap();
        assert_eq!(cut.graph.n(), 3);
        assert_eq!(cut.graph.m(), 3);
        assert_eq!(cut.to_original, vec![0, 2, 3]);
    }

    #[test]
    fn disjoint_union_shifts_labels() {
        let g = Graph::disjoint_union(&[path(2), path(3)]).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 1), (2, 3), (3, 4)]);
    }
}

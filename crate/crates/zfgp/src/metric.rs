use crate::error::{GraphError, Result};
use crate::graph::Graph;
use crate::vertexset::VertexSet;

/// All-pairs shortest-path distances. Unreachable pairs hold the sentinel
/// value `n`, which is strictly larger than any achievable distance (a
/// shortest path visits at most `n` vertices, so finite distances are at most
/// `n - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u16>,
}

impl DistanceMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sentinel used for unreachable pairs.
    #[inline]
    pub fn infinity(&self) -> u16 {
        self.n as u16
    }

    /// Raw entry; compare against [`DistanceMatrix::infinity`] for reachability.
    #[inline]
    pub fn raw(&self, u: usize, v: usize) -> u16 {
        self.d[u * self.n + v]
    }

    /// Finite distance, or `None` when `u` and `v` are in different components.
    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.raw(u, v);
        if d == self.infinity() {
            None
        } else {
            Some(d as usize)
        }
    }

    #[inline]
    pub fn connected_pair(&self, u: usize, v: usize) -> bool {
        self.raw(u, v) != self.infinity()
    }
}

/// BFS from every vertex. Exact integer distances; no floating point anywhere.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let inf = n as u16;
    let mut d = vec![inf; n * n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        let row = &mut d[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let du = row[u];
            for v in g.adj(u).iter() {
                if row[v] == inf {
                    row[v] = du + 1;
                    queue.push(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// The interval `I(u, v)`: vertices lying on at least one shortest `u,v`-path,
/// i.e. `{ x : d(u,x) + d(x,v) = d(u,v) }`. Endpoints are always members.
/// Errors when `u` and `v` are in different components.
pub fn interval(dist: &DistanceMatrix, u: usize, v: usize) -> Result<VertexSet> {
    let duv = dist.raw(u, v);
    if duv == dist.infinity() {
        return Err(GraphError::DisconnectedPair { u, v });
    }
    let mut s = VertexSet::empty();
    for x in 0..dist.n() {
        // Sums of two u16 distances stay well below u16::MAX (n <= 64), and the
        // sentinel can never satisfy the equality because d(u,x) >= 1 for x != u.
        if dist.raw(u, x) + dist.raw(x, v) == duv {
            s.insert(x);
        }
    }
    Ok(s)
}

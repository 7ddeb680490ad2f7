//! General position sets and the exact gp number.
//!
//! A set S is in general position when no three of its vertices lie on a
//! common shortest path. The solver reduces this to a 3-uniform hypergraph
//! independence problem: every "conflict triple" (a, b, middle) marks a
//! forbidden 3-subset, and gp(G) is the largest S containing no triple.

use crate::error::{GraphError, Result};
use crate::graph::Graph;
use crate::metric::{self, DistanceMatrix};
use crate::vertexset::VertexSet;
use crate::{classify, DEFAULT_EXACT_CAP};
use serde::Serialize;

/// A forbidden 3-subset: `middle` lies strictly between `a` and `b` on some
/// geodesic, i.e. d(a, middle) + d(middle, b) = d(a, b) with `a < b` and
/// `middle` distinct from both. Each forbidden 3-subset is produced exactly
/// once: if m is between a and b then d(a, m) and d(m, b) are both strictly
/// smaller than d(a, b), so neither a nor b can be between the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ConflictTriple {
    pub a: usize,
    pub b: usize,
    pub middle: usize,
}

/// All conflict triples of a connected graph, sorted by (a, b, middle).
pub fn conflict_triples(g: &Graph) -> Result<Vec<ConflictTriple>> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(triples_of(&metric::all_pairs_distances(g)))
}

/// Triples over finite-distance pairs only; pairs in different components
/// share no geodesic and so never conflict.
fn triples_of(dist: &DistanceMatrix) -> Vec<ConflictTriple> {
    let n = dist.n();
    let inf = dist.infinity();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let dab = dist.raw(a, b);
            if dab == inf {
                continue;
            }
            for middle in 0..n {
                if middle != a
                    && middle != b
                    && dist.raw(a, middle) != inf
                    && dist.raw(a, middle) + dist.raw(middle, b) == dab
                {
                    out.push(ConflictTriple { a, b, middle });
                }
            }
        }
    }
    out
}

/// The lexicographically least violating triple of S as a sorted vertex
/// triple, or None if S is in general position. Works on disconnected graphs
/// too (cross-component pairs cannot violate).
pub fn general_position_violation(g: &Graph, s: VertexSet) -> Option<(usize, usize, usize)> {
    let dist = metric::all_pairs_distances(g);
    triples_of(&dist)
        .into_iter()
        .filter(|t| s.contains(t.a) && s.contains(t.b) && s.contains(t.middle))
        .map(|t| {
            let mut v = [t.a, t.b, t.middle];
            v.sort_unstable();
            (v[0], v[1], v[2])
        })
        .min()
}

pub fn is_general_position_set(g: &Graph, s: VertexSet) -> bool {
    general_position_violation(g, s).is_none()
}

/// Exact gp number with a witness; the graph must be connected. Use
/// [`gp_number_multi`] when components should be handled together.
pub fn gp_number(g: &Graph) -> Result<(usize, VertexSet)> {
    gp_number_capped(g, DEFAULT_EXACT_CAP)
}

pub fn gp_number_capped(g: &Graph, cap: usize) -> Result<(usize, VertexSet)> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    gp_number_multi_capped(g, cap)
}

/// Exact gp number of an arbitrary (possibly disconnected) graph. Geodesics
/// exist only inside components, so this equals the sum of the component gp
/// numbers; the solver does not rely on that fact but the tests confirm it.
pub fn gp_number_multi(g: &Graph) -> Result<(usize, VertexSet)> {
    gp_number_multi_capped(g, DEFAULT_EXACT_CAP)
}

pub fn gp_number_multi_capped(g: &Graph, cap: usize) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    if n == 0 {
        return Ok((0, VertexSet::EMPTY));
    }
    let instance = GpInstance::build(g);
    if instance.triples.is_empty() {
        // No geodesic carries three vertices (e.g. complete graphs), so the
        // whole vertex set is the unique maximum witness.
        return Ok((n, g.vertex_set()));
    }
    let value = instance.max_value();
    let witness = instance.lex_witness(value);
    Ok((value, witness))
}

struct GpInstance {
    n: usize,
    triples: Vec<[usize; 3]>,
    /// For each vertex v, the other two members of every triple containing v;
    /// adding v to S is legal iff no such pair is already fully in S.
    partners: Vec<Vec<(usize, usize)>>,
    /// Branch order for the value search: descending triple degree. Purely a
    /// heuristic; correctness comes from the bound below.
    order: Vec<usize>,
}

impl GpInstance {
    fn build(g: &Graph) -> GpInstance {
        let n = g.n();
        let dist = metric::all_pairs_distances(g);
        let mut triples = Vec::new();
        let mut partners = vec![Vec::new(); n];
        for t in triples_of(&dist) {
            partners[t.a].push((t.b, t.middle));
            partners[t.b].push((t.a, t.middle));
            partners[t.middle].push((t.a, t.b));
            triples.push([t.a, t.b, t.middle]);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(partners[v].len()), v));
        GpInstance { n, triples, partners, order }
    }

    fn can_add(&self, s: VertexSet, v: usize) -> bool {
        self.partners[v].iter().all(|&(x, y)| !(s.contains(x) && s.contains(y)))
    }

    /// Upper bound on the best achievable from a node with chosen set `s` and
    /// undecided pool `avail`. Sound: a triple with all members in s ∪ avail
    /// and at least one undecided member forces at least one future exclusion
    /// among its undecided members; triples with pairwise disjoint undecided
    /// parts force distinct exclusions, so |s| + |avail| - (number of such
    /// disjoint triples found greedily) can never be beaten.
    fn upper_bound(&self, s: VertexSet, avail: VertexSet) -> usize {
        let live = s.union(avail);
        let mut used = VertexSet::EMPTY;
        let mut forced = 0;
        for t in &self.triples {
            let members: VertexSet = t.iter().copied().collect();
            if !members.is_subset_of(live) {
                continue;
            }
            let undecided = members.intersect(avail);
            if !undecided.is_empty() && !undecided.intersects(used) {
                forced += 1;
                used = used.union(undecided);
            }
        }
        s.len() + avail.len() - forced
    }

    fn max_value(&self) -> usize {
        let mut best = 0;
        self.value_dfs(0, VertexSet::EMPTY, &mut best);
        best
    }

    fn value_dfs(&self, pos: usize, s: VertexSet, best: &mut usize) {
        if s.len() > *best {
            *best = s.len();
        }
        if pos == self.n {
            return;
        }
        let avail: VertexSet = self.order[pos..].iter().copied().collect();
        if self.upper_bound(s, avail) <= *best {
            return;
        }
        let v = self.order[pos];
        if self.can_add(s, v) {
            self.value_dfs(pos + 1, s.with(v), best);
        }
        self.value_dfs(pos + 1, s, best);
    }

    /// The lexicographically least witness of the known optimum size, found by
    /// an include-first scan in ascending vertex order: every set containing
    /// vertex v is visited before any set whose least undecided choice skips
    /// v, which is exactly lexicographic order on sorted vertex lists. General
    /// position is closed under subsets, so refusing an illegal include can
    /// never miss a witness extending it.
    fn lex_witness(&self, target: usize) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        let found = self.witness_dfs(0, VertexSet::EMPTY, target, &mut out);
        debug_assert!(found, "witness search must succeed at the proven optimum");
        out
    }

    fn witness_dfs(&self, v: usize, s: VertexSet, target: usize, out: &mut VertexSet) -> bool {
        if s.len() == target {
            *out = s;
            return true;
        }
        if v == self.n || s.len() + (self.n - v) < target {
            return false;
        }
        if self.can_add(s, v) && self.witness_dfs(v + 1, s.with(v), target, out) {
            return true;
        }
        self.witness_dfs(v + 1, s, target, out)
    }
}

/// gp for trees without search: the general position sets of a tree with at
/// least two vertices are maximized by its leaves. Cross-checked against the
/// exact solver in the tests.
pub fn gp_tree_fast(g: &Graph) -> Result<usize> {
    if !classify::classify(g).tree {
        return Err(GraphError::NotTree);
    }
    if g.n() == 1 {
        return Ok(1);
    }
    Ok(g.leaf_count())
}

/// gp for connected block graphs: the simplicial vertices form a maximum
/// general position set.
pub fn gp_block_fast(g: &Graph) -> Result<usize> {
    if !classify::classify(g).block_graph {
        return Err(GraphError::NotBlockGraph);
    }
    Ok(g.simplicial_vertices().len())
}

//! Exact path cover number: the fewest vertex-disjoint induced paths that
//! together cover every vertex.
//!
//! The solver is a memoized dynamic program over the set of still-uncovered
//! vertices. The lowest uncovered vertex must belong to some part, so each
//! state only enumerates the induced paths through that vertex.

use crate::error::{GraphError, Result};
use crate::graph::Graph;
use crate::vertexset::VertexSet;
use crate::DEFAULT_EXACT_CAP;
use std::collections::HashMap;

/// Does `seq` list distinct vertices in an order that induces a path in G?
/// Consecutive entries must be adjacent and non-consecutive ones must not be;
/// together these say G restricted to the entries is exactly the path drawn
/// by the sequence.
pub fn induces_path(g: &Graph, seq: &[usize]) -> bool {
    if seq.is_empty() || seq.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let distinct: VertexSet = seq.iter().copied().collect();
    if distinct.len() != seq.len() {
        return false;
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let adjacent = g.has_edge(seq[i], seq[j]);
            if adjacent != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

/// Exact P(G) plus a minimum partition, each part written as a path sequence.
/// Parts are normalized (lesser endpoint first) and sorted by first vertex,
/// so equal inputs always yield byte-identical output.
pub fn path_cover_number(g: &Graph) -> Result<(usize, Vec<Vec<usize>>)> {
    path_cover_number_capped(g, DEFAULT_EXACT_CAP)
}

pub fn path_cover_number_capped(g: &Graph, cap: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let n = g.n();
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    let mut solver = Cover { g, memo: HashMap::new() };
    let full = g.vertex_set();
    solver.solve(full);
    let mut parts = Vec::new();
    let mut left = full;
    while !left.is_empty() {
        let (_, part) = solver.memo[&left.bits()].clone();
        left = left.minus(part.iter().copied().collect());
        parts.push(part);
    }
    for part in &mut parts {
        if part.first() > part.last() {
            part.reverse();
        }
    }
    parts.sort_by_key(|p| p[0]);
    // Defensive re-check of everything the signature promises; the enumerator
    // only ever emits legal parts, so this is a cheap invariant audit.
    let mut covered = VertexSet::EMPTY;
    for part in &parts {
        let pset: VertexSet = part.iter().copied().collect();
        assert!(induces_path(g, part), "cover part {:?} is not an induced path", part);
        assert!(!covered.intersects(pset), "cover parts overlap at {:?}", part);
        covered = covered.union(pset);
    }
    assert_eq!(covered, full, "cover misses vertices");
    Ok((parts.len(), parts))
}

struct Cover<'a> {
    g: &'a Graph,
    /// uncovered-mask -> (optimal part count, first optimal part through the
    /// lowest uncovered vertex, in discovery order for determinism).
    memo: HashMap<u64, (usize, Vec<usize>)>,
}

impl Cover<'_> {
    fn solve(&mut self, uncovered: VertexSet) -> usize {
        let Some(v0) = uncovered.min() else { return 0 };
        if let Some(&(count, _)) = self.memo.get(&uncovered.bits()) {
            return count;
        }
        let mut best = usize::MAX;
        let mut best_part = Vec::new();
        for part in induced_paths_through(self.g, v0, uncovered) {
            let rest = uncovered.minus(part.iter().copied().collect());
            let count = 1 + self.solve(rest);
            if count < best {
                best = count;
                best_part = part;
            }
        }
        self.memo.insert(uncovered.bits(), (best, best_part));
        best
    }
}

/// Every induced path inside `avail` that contains `v0`, each exactly once.
/// Paths grow outward from `v0` one vertex at a time; a new vertex may join an
/// arm's end only if that end is its sole neighbor among the vertices already
/// picked, which keeps the picked set an induced path at every step. A path
/// with `v0` in its interior has two arms and would otherwise appear once per
/// orientation, so the arm holding v0's smaller path-neighbor is fixed as the
/// "right" arm: left growth only starts from a nonempty right arm and only
/// with a first vertex larger than the right arm's first.
///
/// Emitted sequences read left arm (outermost first), then `v0`, then the
/// right arm.
fn induced_paths_through(g: &Graph, v0: usize, avail: VertexSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    grow_right(g, v0, avail, &mut Vec::new(), &mut out);
    out
}

fn emit(v0: usize, left: &[usize], right: &[usize], out: &mut Vec<Vec<usize>>) {
    let mut seq: Vec<usize> = left.iter().rev().copied().collect();
    seq.push(v0);
    seq.extend_from_slice(right);
    out.push(seq);
}

fn grow_right(
    g: &Graph,
    v0: usize,
    avail: VertexSet,
    right: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    emit(v0, &[], right, out);
    let in_path: VertexSet = std::iter::once(v0).chain(right.iter().copied()).collect();
    if let Some(&r1) = right.first() {
        grow_left(g, v0, avail, right, r1, &mut Vec::new(), in_path, out);
    }
    let end = *right.last().unwrap_or(&v0);
    for w in g.adj(end).intersect(avail).minus(in_path) {
        if g.adj(w).intersect(in_path) == VertexSet::singleton(end) {
            right.push(w);
            grow_right(g, v0, avail, right, out);
            right.pop();
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn grow_left(
    g: &Graph,
    v0: usize,
    avail: VertexSet,
    right: &[usize],
    r1: usize,
    left: &mut Vec<usize>,
    in_path: VertexSet,
    out: &mut Vec<Vec<usize>>,
) {
    if !left.is_empty() {
        emit(v0, left, right, out);
    }
    let end = *left.last().unwrap_or(&v0);
    for w in g.adj(end).intersect(avail).minus(in_path) {
        if left.is_empty() && w <= r1 {
            continue; // orientation canon: left arm starts above right arm
        }
        if g.adj(w).intersect(in_path) == VertexSet::singleton(end) {
            left.push(w);
            grow_left(g, v0, avail, right, r1, left, in_path.with(w), out);
            left.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((n - 1, 0));
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    /// Independent oracle: collect every subset that induces a path by a
    /// structural test (connected, |E| = |V|-1, max degree 2), then run a
    /// plain set-partition DP over those subsets.
    fn brute_p(g: &Graph) -> usize {
        let n = g.n();
        let path_sets: Vec<VertexSet> = (1u64..1 << n)
            .map(VertexSet::from_bits)
            .filter(|&s| {
                let sub = g.induced_subgraph(s).unwrap().graph;
                sub.is_connected()
                    && sub.m() == sub.n() - 1
                    && sub.vertices().all(|v| sub.degree(v) <= 2)
            })
            .collect();
        let mut memo: HashMap<u64, usize> = HashMap::new();
        fn rec(uncovered: VertexSet, sets: &[VertexSet], memo: &mut HashMap<u64, usize>) -> usize {
            let Some(v0) = uncovered.min() else { return 0 };
            if let Some(&c) = memo.get(&uncovered.bits()) {
                return c;
            }
            let mut best = usize::MAX;
            for &s in sets {
                if s.contains(v0) && s.is_subset_of(uncovered) {
                    best = best.min(1 + rec(uncovered.minus(s), sets, memo));
                }
            }
            memo.insert(uncovered.bits(), best);
            best
        }
        rec(g.vertex_set(), &path_sets, &mut memo)
    }

    #[test]
    fn induces_path_checks_order_and_chords() {
        let g = path(3);
        assert!(induces_path(&g, &[0, 1, 2]));
        assert!(induces_path(&g, &[2, 1, 0]));
        assert!(!induces_path(&g, &[0, 2, 1]));
        assert!(induces_path(&g, &[0]));
        assert!(!induces_path(&g, &[]));
        assert!(!induces_path(&g, &[0, 0]));
        assert!(!induces_path(&cycle(3), &[0, 1, 2])); // chord 0-2
        assert!(!induces_path(&g, &[0, 5]));
    }

    #[test]
    fn frozen_covers() {
        assert_eq!(
            path_cover_number(&path(8)).unwrap(),
            (1, vec![vec![0, 1, 2, 3, 4, 5, 6, 7]])
        );
        let star3 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(path_cover_number(&star3).unwrap(), (2, vec![vec![1, 0, 2], vec![3]]));
        assert_eq!(
            path_cover_number(&cycle(5)).unwrap(),
            (2, vec![vec![0], vec![1, 2, 3, 4]])
        );
        assert_eq!(path_cover_number(&complete(4)).unwrap(), (2, vec![vec![0, 1], vec![2, 3]]));
        let star4 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(
            path_cover_number(&star4).unwrap(),
            (3, vec![vec![1, 0, 2], vec![3], vec![4]])
        );
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(
            path_cover_number(&bowtie).unwrap(),
            (3, vec![vec![0], vec![1, 2], vec![3, 4]])
        );
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(path_cover_number(&Graph::edgeless(0).unwrap()).unwrap(), (0, vec![]));
        assert_eq!(
            path_cover_number(&Graph::edgeless(3).unwrap()).unwrap(),
            (3, vec![vec![0], vec![1], vec![2]])
        );
        let two_p3 = Graph::disjoint_union(&[path(3), path(3)]).unwrap();
        assert_eq!(
            path_cover_number(&two_p3).unwrap(),
            (2, vec![vec![0, 1, 2], vec![3, 4, 5]])
        );
        assert!(matches!(
            path_cover_number_capped(&path(9), 8),
            Err(GraphError::CapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
        for _ in 0..120 {
            let n = rng.gen_range(1..=6usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let (p, _) = path_cover_number(&g).unwrap();
            assert_eq!(p, brute_p(&g), "on {:?}", g);
        }
    }

    #[test]
    fn cover_never_exceeds_zero_forcing() {
        // Classic bound: every graph satisfies P <= Z.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
        for _ in 0..60 {
            let n = rng.gen_range(1..=7usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let (p, _) = path_cover_number(&g).unwrap();
            let (z, _) = forcing::zero_forcing_number(&g).unwrap();
            assert!(p <= z, "P = {p} > Z = {z} on {:?}", g);
        }
    }
}

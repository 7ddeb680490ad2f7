use crate::error::{GraphError, Result};
use crate::graph::Graph;
use crate::DEFAULT_CANON_CAP;

/// Canonical form of a graph: two graphs on at most the cap receive equal keys
/// exactly when they are isomorphic. Layout: one byte `n`, then the
/// upper-triangle adjacency bits of the canonically relabeled graph, packed
/// big-endian.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

// Encodings live in a u128: C(16,2) = 120 upper-triangle bits is the most we
// can represent, which is far above the canonical cap.
const HARD_CAP: usize = 16;

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    canonical_key_capped(g, DEFAULT_CANON_CAP)
}

pub fn canonical_key_capped(g: &Graph, cap: usize) -> Result<CanonicalKey> {
    let n = g.n();
    let effective = cap.min(HARD_CAP);
    if n > effective {
        return Err(GraphError::CapExceeded { n, cap: effective });
    }
    let mut search = Search { g, n, best: None, gens: Vec::new() };
    let mut cells = if n == 0 { Vec::new() } else { vec![(0..n).collect::<Vec<_>>()] };
    search.refine(&mut cells);
    search.run(cells, &mut Vec::new());
    let enc = search.best.map(|(e, _)| e).unwrap_or(0);
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(8);
    let mut bytes = Vec::with_capacity(1 + nbytes);
    bytes.push(n as u8);
    for i in 0..nbytes {
        bytes.push(((enc >> (8 * (nbytes - 1 - i))) & 0xff) as u8);
    }
    Ok(CanonicalKey(bytes))
}

/// Isomorphism test via canonical keys (both graphs must fit under the cap).
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// Individualization-refinement canonical labeling. The canonical order is the
/// one minimizing the adjacency encoding over all leaves of the refinement
/// tree. Discovered automorphisms (equal-encoding leaves) prune symmetric
/// branches, which keeps highly regular graphs (complete graphs, stars,
/// cycles) tractable; without that pruning those cases degenerate to n!.
struct Search<'a> {
    g: &'a Graph,
    n: usize,
    /// Best (minimum) encoding and the vertex order realizing it.
    best: Option<(u128, Vec<usize>)>,
    /// Automorphisms discovered so far, as vertex -> vertex maps.
    gens: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Equitable refinement: split cells by neighbor counts against every cell
    /// until stable. New sub-cells are ordered by their count signature, which
    /// depends only on the partition structure, never on vertex labels — the
    /// whole procedure commutes with isomorphism.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let masks: Vec<crate::vertexset::VertexSet> = cells
                .iter()
                .map(|c| c.iter().copied().collect())
                .collect();
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            let mut changed = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
                for &v in cell {
                    let sig: Vec<u32> = masks
                        .iter()
                        .map(|&m| self.g.adj(v).intersect(m).len() as u32)
                        .collect();
                    match groups.iter_mut().find(|(s, _)| *s == sig) {
                        Some((_, vs)) => vs.push(v),
                        None => groups.push((sig, vec![v])),
                    }
                }
                if groups.len() > 1 {
                    changed = true;
                }
                groups.sort_by(|a, b| a.0.cmp(&b.0));
                for (_, mut vs) in groups {
                    vs.sort_unstable();
                    next.push(vs);
                }
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn encode(&self, order: &[usize]) -> u128 {
        let mut bits: u128 = 0;
        let mut idx = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.g.has_edge(order[i], order[j]) {
                    bits |= 1u128 << idx;
                }
                idx += 1;
            }
        }
        bits
    }

    fn run(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if cells.iter().all(|c| c.len() == 1) {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let enc = self.encode(&order);
            match &self.best {
                None => self.best = Some((enc, order)),
                Some((b, border)) => {
                    if enc < *b {
                        self.best = Some((enc, order));
                    } else if enc == *b {
                        // Two orders giving the same encoding induce an
                        // automorphism gamma with gamma(border[i]) = order[i].
                        let mut gamma = vec![0usize; self.n];
                        for i in 0..self.n {
                            gamma[border[i]] = order[i];
                        }
                        if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                            self.gens.push(gamma);
                        }
                    }
                }
            }
            return;
        }
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .unwrap();
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.orbit_pruned(prefix, &explored, v) {
                explored.push(v);
                continue;
            }
            let mut child: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&x| x != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            self.refine(&mut child);
            prefix.push(v);
            self.run(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Prune candidate `v` when a known automorphism subgroup that fixes the
    /// current prefix pointwise maps an already-explored sibling onto `v`: the
    /// subtree below `v` is then the image of an explored subtree and contains
    /// exactly the same set of leaf encodings, so the minimum is preserved.
    fn orbit_pruned(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        if explored.is_empty() || self.gens.is_empty() {
            return false;
        }
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.gens {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for a in 0..self.n {
                    let ra = find(&mut uf, a);
                    let rb = find(&mut uf, gamma[a]);
                    if ra != rb {
                        uf[ra] = rb;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut uf, v);
        explored.iter().any(|&u| find(&mut uf, u) == rv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

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

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>()).unwrap()
    }

    /// Brute-force isomorphism by trying all vertex permutations. Only used as
    /// an oracle on tiny graphs.
    fn isomorphic_by_permutation(a: &Graph, b: &Graph) -> bool {
        if a.n() != b.n() || a.m() != b.m() {
            return false;
        }
        let n = a.n();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v])) {
                return true;
            }
            // next_permutation
            let mut i = n.wrapping_sub(2);
            while i != usize::MAX && perm[i] >= perm[i + 1] {
                i = i.wrapping_sub(1);
            }
            if i == usize::MAX {
                return false;
            }
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn relabeling_preserves_the_key() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5)]).unwrap();
        // Same graph with labels scrambled by the permutation 0->3,1->5,2->0,3->1,4->4,5->2.
        let h = Graph::from_edges(6, &[(3, 5), (5, 0), (0, 1), (1, 3), (0, 4), (4, 2)]).unwrap();
        assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
    }

    #[test]
    fn distinguishes_non_isomorphic_graphs() {
        assert_ne!(canonical_key(&path(4)).unwrap(), canonical_key(&star(3)).unwrap());
        assert_ne!(canonical_key(&cycle(6)).unwrap(), canonical_key(&path(6)).unwrap());
        // Same degree sequence (2,2,2,2,2,2): C6 vs two triangles.
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_ne!(canonical_key(&cycle(6)).unwrap(), canonical_key(&two_triangles).unwrap());
    }

    #[test]
    fn labeled_trees_on_four_vertices_fall_into_two_classes() {
        // All 16 labeled trees on 4 vertices (via Pruefer sequences) must
        // produce exactly 2 distinct keys, agreeing with the permutation
        // oracle's partition.
        let mut trees = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                trees.push(crate::families::pruefer_decode(&[a, b]));
            }
        }
        assert_eq!(trees.len(), 16);
        let mut keys: Vec<CanonicalKey> =
            trees.iter().map(|t| canonical_key(t).unwrap()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 2);
        // Cross-check the key partition against brute-force isomorphism.
        for i in 0..trees.len() {
            for j in i + 1..trees.len() {
                let same_key =
                    canonical_key(&trees[i]).unwrap() == canonical_key(&trees[j]).unwrap();
                assert_eq!(
                    same_key,
                    isomorphic_by_permutation(&trees[i], &trees[j]),
                    "key partition disagrees with permutation oracle on trees {i},{j}"
                );
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_stay_fast() {
        // These would take ~12! leaf visits without automorphism pruning.
        let k = canonical_key(&complete(12)).unwrap();
        assert_eq!(k.as_bytes()[0], 12);
        canonical_key(&star(11)).unwrap();
        canonical_key(&cycle(12)).unwrap();
        let full = canonical_key(&complete(12)).unwrap();
        // All upper-triangle bits set for K12.
        assert!(full.as_bytes()[1..].iter().rev().take(8).all(|&b| b == 0xff));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            canonical_key(&path(13)),
            Err(GraphError::CapExceeded { n: 13, cap: 12 })
        ));
        assert!(canonical_key_capped(&path(13), 16).is_ok());
        assert!(matches!(
            canonical_key_capped(&path(17), 20),
            Err(GraphError::CapExceeded { n: 17, cap: 16 })
        ));
    }

    #[test]
    fn trivial_sizes() {
        assert_eq!(canonical_key(&Graph::edgeless(0).unwrap()).unwrap().as_bytes(), &[0]);
        assert_eq!(canonical_key(&Graph::edgeless(1).unwrap()).unwrap().as_bytes(), &[1]);
        assert!(are_isomorphic(&complete(2), &path(2)).unwrap());
        assert!(!are_isomorphic(&path(3), &complete(3)).unwrap());
    }
}

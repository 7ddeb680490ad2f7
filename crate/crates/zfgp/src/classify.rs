use serde::Serialize;

use crate::error::{GraphError, Result};
use crate::graph::{Graph, InducedSubgraph};
use crate::vertexset::VertexSet;

/// Structural class membership flags, all computed in one pass so reports can
/// show the whole profile of a graph.
///
/// Conventions at the degenerate end: the single-vertex graph is a tree, the
/// empty graph (n = 0) is none of connected/tree/complete, and `K2` is a
/// quasi-tree because deleting either endpoint leaves `K1`, which is a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub connected: bool,
    pub forest: bool,
    pub tree: bool,
    pub unicyclic: bool,
    pub bicyclic: bool,
    pub cycle_graph: bool,
    pub complete: bool,
    pub bipartite: bool,
    pub block_graph: bool,
    pub quasi_tree: bool,
    /// Vertices `v` such that `G - v` is a tree. Nonempty iff `quasi_tree`.
    pub quasi_vertices: VertexSet,
}

pub fn classify(g: &Graph) -> ClassFlags {
    let n = g.n();
    let m = g.m();
    let comps = g.components().len();
    let connected = n >= 1 && comps == 1;
    // A graph is acyclic exactly when m = n - (number of components).
    let forest = m + comps == n;
    let tree = connected && forest;
    let unicyclic = connected && m == n;
    let bicyclic = connected && m == n + 1;
    let cycle_graph = connected && n >= 3 && g.vertices().all(|v| g.degree(v) == 2);
    let complete = n >= 1 && m == n * (n - 1) / 2;
    let bipartite = is_bipartite(g);
    let block_graph = connected && blocks_are_cliques(g);
    let quasi_vertices = quasi_vertices(g);
    ClassFlags {
        connected,
        forest,
        tree,
        unicyclic,
        bicyclic,
        cycle_graph,
        complete,
        bipartite,
        block_graph,
        quasi_tree: !quasi_vertices.is_empty(),
        quasi_vertices,
    }
}

/// Vertices whose deletion leaves a tree.
pub fn quasi_vertices(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut out = VertexSet::empty();
    for v in 0..n {
        // G - v is a tree iff it is connected with (n-1) - 1 edges; n >= 2.
        if n < 2 {
            continue;
        }
        let m_rest = g.m() - g.degree(v);
        if m_rest != n - 2 {
            continue;
        }
        let rest = g.vertex_set().without(v);
        let start = rest.min().unwrap();
        if g.reachable_within(start, rest) == rest {
            out.insert(v);
        }
    }
    out
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut color = vec![2u8; n]; // 2 = uncolored
    for s in 0..n {
        if color[s] != 2 {
            continue;
        }
        color[s] = 0;
        let mut queue = vec![s];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for v in g.adj(u).iter() {
                if color[v] == 2 {
                    color[v] = 1 - color[u];
                    queue.push(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Biconnected components via Tarjan's lowpoint DFS, returned as vertex sets.
/// Bridges show up as two-vertex blocks; isolated vertices yield none.
pub fn biconnected_components(g: &Graph) -> Vec<VertexSet> {
    struct Dfs<'a> {
        g: &'a Graph,
        num: Vec<usize>,
        low: Vec<usize>,
        counter: usize,
        edge_stack: Vec<(usize, usize)>,
        blocks: Vec<VertexSet>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent: Option<usize>) {
            self.counter += 1;
            self.num[u] = self.counter;
            self.low[u] = self.counter;
            for v in self.g.adj(u).iter() {
                if self.num[v] == 0 {
                    self.edge_stack.push((u, v));
                    self.visit(v, Some(u));
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.num[u] {
                        // u is a cut vertex (or root); pop one block.
                        let mut block = VertexSet::empty();
                        while let Some(&(a, b)) = self.edge_stack.last() {
                            if self.num[a] >= self.num[v] {
                                block.insert(a);
                                block.insert(b);
                                self.edge_stack.pop();
                            } else {
                                break;
                            }
                        }
                        // The edge (u, v) itself closes the block.
                        if let Some((a, b)) = self.edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                        }
                        self.blocks.push(block);
                    }
                } else if Some(v) != parent && self.num[v] < self.num[u] {
                    self.edge_stack.push((u, v));
                    self.low[u] = self.low[u].min(self.num[v]);
                }
            }
        }
    }
    let n = g.n();
    let mut dfs = Dfs {
        g,
        num: vec![0; n],
        low: vec![0; n],
        counter: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
    };
    for s in 0..n {
        if dfs.num[s] == 0 {
            dfs.visit(s, None);
        }
    }
    dfs.blocks
}

fn blocks_are_cliques(g: &Graph) -> bool {
    biconnected_components(g).iter().all(|b| {
        b.iter().all(|u| {
            let need = b.without(u);
            need.is_subset_of(g.adj(u))
        })
    })
}

/// The unique cycle of a unicyclic graph, as a vertex sequence in cycle order.
/// Deterministic orientation: starts at the smallest cycle vertex and steps to
/// its smaller cycle neighbor first.
pub fn unique_cycle(g: &Graph) -> Result<Vec<usize>> {
    if !(g.is_connected() && g.m() == g.n()) {
        return Err(GraphError::NotUnicyclic);
    }
    // Strip leaves until only the 2-core (the cycle) remains.
    let mut alive = g.vertex_set();
    loop {
        let peel: VertexSet = alive
            .iter()
            .filter(|&v| g.adj(v).intersect(alive).len() <= 1)
            .collect();
        if peel.is_empty() {
            break;
        }
        alive = alive.minus(peel);
    }
    let start = alive.min().expect("unicyclic graph has a nonempty 2-core");
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.adj(start).intersect(alive).min().unwrap();
    while cur != start {
        order.push(cur);
        let next = g
            .adj(cur)
            .intersect(alive)
            .iter()
            .find(|&w| w != prev)
            .expect("cycle vertex has two cycle neighbors");
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(order.len(), alive.len());
    Ok(order)
}

/// Cycle vertices of degree at least 3 in a unicyclic graph (those carrying
/// hanging trees).
pub fn branch_vertices(g: &Graph) -> Result<VertexSet> {
    let cycle = unique_cycle(g)?;
    Ok(cycle.into_iter().filter(|&v| g.degree(v) >= 3).collect())
}

/// The hanging tree rooted at cycle vertex `v` of a unicyclic graph: the
/// component containing `v` after the two cycle edges at `v` are cut (removing
/// v's cycle neighbors and keeping what stays attached to `v`).
pub fn root_tree(g: &Graph, v: usize) -> Result<InducedSubgraph> {
    let cycle = unique_cycle(g)?;
    let pos = cycle
        .iter()
        .position(|&c| c == v)
        .ok_or(GraphError::NotOnCycle(v))?;
    let len = cycle.len();
    let left = cycle[(pos + len - 1) % len];
    let right = cycle[(pos + 1) % len];
    let without: VertexSet = [left, right].into_iter().collect();
    let keep = g.reachable_within(v, g.vertex_set().minus(without));
    g.induced_subgraph(keep)
}

//! Trimming for path covers: repeatedly delete appropriate vertices, whole
//! path components, and peripheral leaves until none remain. The surviving
//! graph (the trimmed form) is unique up to isomorphism no matter the order
//! of legal moves, and the path cover number follows from the move counts:
//!
//!   P(G) = P(trimmed form) + (path components removed) - (appropriate
//!   vertices removed),
//!
//! because removing an appropriate vertex raises P by one, removing a path
//! component lowers it by one, and removing a peripheral leaf leaves it
//! unchanged. Connected unicyclic graphs trim to the empty graph or to a
//! partial sun, whose P has a closed form; that route gives both a fast P
//! and, through P = Z on unicyclic graphs, a fast Z.

use crate::error::{GraphError, Result};
use crate::graph::{Graph, InducedSubgraph};
use crate::vertexset::VertexSet;
use crate::classify;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TrimStepKind {
    /// A vertex whose deletion detaches at least two path components, each
    /// hanging from it by a single path-endpoint.
    Appropriate,
    /// A whole connected component that is a path.
    IsolatedPath,
    /// A leaf whose neighbor has degree at most 2.
    PeripheralLeaf,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrimStep {
    pub kind: TrimStepKind,
    /// Original vertex labels removed by this step (one vertex except for
    /// IsolatedPath, which removes the whole component, listed increasing).
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct TrimResult {
    pub steps: Vec<TrimStep>,
    /// Appropriate-vertex deletions.
    pub n1: usize,
    /// Path components removed.
    pub n2: usize,
    /// Peripheral leaves removed.
    pub n3: usize,
    /// Surviving vertices, in original labels.
    pub kept: VertexSet,
    /// The trimmed form, compacted, with the mapping back to original labels.
    pub core: InducedSubgraph,
}

impl TrimResult {
    /// P(G) - P(trimmed form), the correction the trim log contributes.
    pub fn cover_offset(&self) -> isize {
        self.n2 as isize - self.n1 as isize
    }
}

/// Is the induced subgraph on component `c` a path? `c` must be connected
/// (components always are); then it is a path iff it has |c|-1 internal edges
/// and no vertex sees 3 of its members.
fn is_path_component(g: &Graph, c: VertexSet) -> bool {
    let mut internal_edges = 0;
    for v in c {
        let d = g.adj(v).intersect(c).len();
        if d > 2 {
            return false;
        }
        internal_edges += d;
    }
    internal_edges == 2 * (c.len() - 1)
}

/// Endpoints of a path component: members with at most one neighbor inside.
fn path_endpoints(g: &Graph, c: VertexSet) -> VertexSet {
    c.iter().filter(|&v| g.adj(v).intersect(c).len() <= 1).collect()
}

fn appropriate_in(g: &Graph, alive: VertexSet) -> Vec<usize> {
    alive
        .iter()
        .filter(|&x| {
            let rest = alive.without(x);
            let mut qualifying = 0;
            for c in g.components_within(rest) {
                let attach = g.adj(x).intersect(c);
                if attach.len() == 1
                    && is_path_component(g, c)
                    && attach.is_subset_of(path_endpoints(g, c))
                {
                    qualifying += 1;
                }
            }
            qualifying >= 2
        })
        .collect()
}

fn isolated_paths_in(g: &Graph, alive: VertexSet) -> Vec<VertexSet> {
    g.components_within(alive).into_iter().filter(|&c| is_path_component(g, c)).collect()
}

fn peripheral_leaves_in(g: &Graph, alive: VertexSet) -> Vec<usize> {
    alive
        .iter()
        .filter(|&v| {
            let nb = g.adj(v).intersect(alive);
            nb.len() == 1 && g.adj(nb.min().unwrap()).intersect(alive).len() <= 2
        })
        .collect()
}

/// Appropriate vertices of the whole graph, lowest first.
pub fn appropriate_vertices(g: &Graph) -> Vec<usize> {
    appropriate_in(g, g.vertex_set())
}

/// Peripheral leaves of the whole graph, lowest first.
pub fn peripheral_leaves(g: &Graph) -> Vec<usize> {
    peripheral_leaves_in(g, g.vertex_set())
}

#[derive(Clone, Debug)]
enum Move {
    Appropriate(usize),
    IsolatedPath(VertexSet),
    PeripheralLeaf(usize),
}

fn legal_moves(g: &Graph, alive: VertexSet) -> Vec<Move> {
    let mut out: Vec<Move> =
        appropriate_in(g, alive).into_iter().map(Move::Appropriate).collect();
    out.extend(isolated_paths_in(g, alive).into_iter().map(Move::IsolatedPath));
    out.extend(peripheral_leaves_in(g, alive).into_iter().map(Move::PeripheralLeaf));
    out
}

fn apply_move(alive: &mut VertexSet, mv: &Move, result: &mut (Vec<TrimStep>, usize, usize, usize)) {
    let (steps, n1, n2, n3) = result;
    match mv {
        Move::Appropriate(x) => {
            *alive = alive.without(*x);
            steps.push(TrimStep { kind: TrimStepKind::Appropriate, vertices: vec![*x] });
            *n1 += 1;
        }
        Move::IsolatedPath(c) => {
            *alive = alive.minus(*c);
            steps.push(TrimStep { kind: TrimStepKind::IsolatedPath, vertices: c.to_vec() });
            *n2 += 1;
        }
        Move::PeripheralLeaf(v) => {
            *alive = alive.without(*v);
            steps.push(TrimStep { kind: TrimStepKind::PeripheralLeaf, vertices: vec![*v] });
            *n3 += 1;
        }
    }
}

fn finish(g: &Graph, alive: VertexSet, acc: (Vec<TrimStep>, usize, usize, usize)) -> TrimResult {
    let (steps, n1, n2, n3) = acc;
    let core = g.induced_subgraph(alive).expect("alive vertices are in range");
    TrimResult { steps, n1, n2, n3, kept: alive, core }
}

/// Trim with a fixed move policy: the lowest appropriate vertex if any, else
/// the path component with the lowest member, else the lowest peripheral
/// leaf. Equal inputs give identical logs.
pub fn trimmed_form(g: &Graph) -> TrimResult {
    let mut alive = g.vertex_set();
    let mut acc = (Vec::new(), 0, 0, 0);
    loop {
        let app = appropriate_in(g, alive);
        let mv = if let Some(&x) = app.first() {
            Move::Appropriate(x)
        } else if let Some(c) = isolated_paths_in(g, alive).into_iter().next() {
            Move::IsolatedPath(c)
        } else if let Some(&v) = peripheral_leaves_in(g, alive).first() {
            Move::PeripheralLeaf(v)
        } else {
            return finish(g, alive, acc);
        };
        apply_move(&mut alive, &mv, &mut acc);
    }
}

/// Trim by drawing uniformly among all legal moves at every step. Used to
/// exercise the order-independence of the trimmed form.
pub fn trimmed_form_with_rng<R: Rng>(g: &Graph, rng: &mut R) -> TrimResult {
    let mut alive = g.vertex_set();
    let mut acc = (Vec::new(), 0, 0, 0);
    loop {
        let moves = legal_moves(g, alive);
        if moves.is_empty() {
            return finish(g, alive, acc);
        }
        let mv = moves[rng.gen_range(0..moves.len())].clone();
        apply_move(&mut alive, &mv, &mut acc);
    }
}

/// A cycle with at most one pendant leaf on each cycle vertex.
#[derive(Clone, Debug)]
pub struct PartialSun {
    /// Cycle vertices in traversal order.
    pub cycle: Vec<usize>,
    /// Cycle vertices carrying a pendant leaf.
    pub leafed: VertexSet,
    /// Maximal runs of consecutive leafed vertices along the cycle, with
    /// wraparound; a fully leafed cycle is a single run.
    pub segments: Vec<Vec<usize>>,
}

/// Recognize a partial sun and precompute its leafed segments.
pub fn is_partial_sun(g: &Graph) -> Option<PartialSun> {
    let cycle = classify::unique_cycle(g).ok()?;
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let mut leafed = VertexSet::EMPTY;
    for v in g.vertices() {
        if on_cycle.contains(v) {
            let pendants = g.adj(v).minus(on_cycle);
            if pendants.len() > 1 {
                return None;
            }
            if pendants.len() == 1 {
                leafed.insert(v);
            }
        } else if g.degree(v) != 1 {
            return None; // off-cycle vertices must be pendant leaves
        }
    }
    let segments = cyclic_runs(&cycle, leafed);
    Some(PartialSun { cycle, leafed, segments })
}

fn cyclic_runs(cycle: &[usize], members: VertexSet) -> Vec<Vec<usize>> {
    let k = cycle.len();
    if members.is_empty() {
        return Vec::new();
    }
    if cycle.iter().all(|&v| members.contains(v)) {
        return vec![cycle.to_vec()];
    }
    let mut runs: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    for &v in cycle {
        if members.contains(v) {
            current.push(v);
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    // A run crossing the scan origin appears as a head run and a tail run;
    // stitch them into one, ordered along the cycle.
    if runs.len() >= 2 && runs[0][0] == cycle[0] && *runs.last().unwrap().last().unwrap() == cycle[k - 1]
    {
        let mut tail = runs.pop().unwrap();
        tail.extend(runs[0].iter().copied());
        runs[0] = tail;
    }
    runs
}

/// Closed-form path cover number of a partial sun: each maximal leafed run of
/// length r needs ceil(r/2) parts, and never fewer than the 2 any cycle needs.
pub fn partial_sun_path_cover(ps: &PartialSun) -> usize {
    let runs: usize = ps.segments.iter().map(|s| s.len().div_ceil(2)).sum();
    runs.max(2)
}

/// P(G) for connected unicyclic G via the trim log. The trimmed form of such
/// a graph is empty or a partial sun; anything else is reported as an error
/// rather than plaster over a broken trim.
pub fn path_cover_via_trim(g: &Graph) -> Result<usize> {
    if !classify::classify(g).unicyclic {
        return Err(GraphError::NotUnicyclic);
    }
    let t = trimmed_form(g);
    let base = if t.kept.is_empty() {
        0
    } else {
        let ps = is_partial_sun(&t.core.graph).ok_or(GraphError::TrimNotPartialSun)?;
        partial_sun_path_cover(&ps)
    };
    Ok((base as isize + t.cover_offset()) as usize)
}

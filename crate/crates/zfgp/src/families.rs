//! Graph families: deterministic constructors, seeded random generators,
//! exhaustive small-n enumerators (one representative per isomorphism class),
//! and the reconstructed figure families H1-H4 with computational validation
//! of their claimed Z/gp identities.
//!
//! The H1-H4 adjacency is reconstructed from the surviving textual clues
//! (named vertices, forcing-set patterns, claimed invariant values), not from
//! the original drawings. [`validate_figure_family`] recomputes the claims
//! exactly and reports refutations instead of hiding them.

use crate::canon::{self, CanonicalKey};
use crate::error::{GraphError, Result};
use crate::graph::Graph;
use crate::{classify, forcing, genpos};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

/// Largest n for the tree enumerator.
pub const MAX_ENUM_TREES: usize = 12;
/// Largest n for the unicyclic enumerator.
pub const MAX_ENUM_UNICYCLIC: usize = 10;
/// Largest n for the general connected enumerator.
pub const MAX_ENUM_CONNECTED: usize = 9;

const RETRY_BUDGET: usize = 200;

/// A generated graph plus its named vertices (generation order). Plain
/// families have no names; the figure families name their cores and pendant
/// clusters.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub labels: Vec<(String, usize)>,
}

impl Generated {
    fn bare(graph: Graph) -> Generated {
        Generated { graph, labels: Vec::new() }
    }

    /// Index of a named vertex.
    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.iter().find(|(l, _)| l == name).map(|&(_, v)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiTreeMode {
    Any,
    /// The generated graph has no pendant vertices at all.
    NoPendants,
    /// Some quasi-vertex has no neighbor of degree 2.
    NoDeg2Neighbors,
}

impl FromStr for QuasiTreeMode {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<QuasiTreeMode> {
        match s {
            "any" => Ok(QuasiTreeMode::Any),
            "no_pendants" => Ok(QuasiTreeMode::NoPendants),
            "no_deg2_neighbors" => Ok(QuasiTreeMode::NoDeg2Neighbors),
            other => Err(GraphError::InvalidFamily(format!("unknown quasi-tree mode '{other}'"))),
        }
    }
}

/// A parsed family request. Random kinds embed their seed so that a spec
/// value fully determines the produced graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Star { n: usize },
    Complete { n: usize },
    Spider { legs: Vec<usize> },
    PartialSun { cycle: usize, leafed: Vec<usize> },
    RandomTree { n: usize, seed: u64 },
    RandomUnicyclic { n: usize, seed: u64 },
    RandomBlock { n: usize, max_block: usize, seed: u64 },
    RandomQuasiTree { n: usize, mode: QuasiTreeMode, seed: u64 },
    H1 { s: usize, t: usize },
    H2,
    H3,
    H4 { s: usize, t: usize },
}

impl FamilySpec {
    /// Replace the seed on random kinds; no-op for deterministic ones.
    pub fn with_seed(mut self, new_seed: u64) -> FamilySpec {
        match &mut self {
            FamilySpec::RandomTree { seed, .. }
            | FamilySpec::RandomUnicyclic { seed, .. }
            | FamilySpec::RandomBlock { seed, .. }
            | FamilySpec::RandomQuasiTree { seed, .. } => *seed = new_seed,
            _ => {}
        }
        self
    }

    pub fn generate(&self) -> Result<Generated> {
        match self {
            FamilySpec::Path { n } => Ok(Generated::bare(path(*n)?)),
            FamilySpec::Cycle { n } => Ok(Generated::bare(cycle(*n)?)),
            FamilySpec::Star { n } => Ok(Generated::bare(star(*n)?)),
            FamilySpec::Complete { n } => Ok(Generated::bare(complete(*n)?)),
            FamilySpec::Spider { legs } => Ok(Generated::bare(spider(legs)?)),
            FamilySpec::PartialSun { cycle, leafed } => {
                Ok(Generated::bare(partial_sun(*cycle, leafed)?))
            }
            FamilySpec::RandomTree { n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok(Generated::bare(random_tree(*n, &mut rng)?))
            }
            FamilySpec::RandomUnicyclic { n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok(Generated::bare(random_unicyclic(*n, &mut rng)?))
            }
            FamilySpec::RandomBlock { n, max_block, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok(Generated::bare(random_block_graph(*n, *max_block, &mut rng)?))
            }
            FamilySpec::RandomQuasiTree { n, mode, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok(Generated::bare(random_quasi_tree(*n, *mode, &mut rng)?))
            }
            FamilySpec::H1 { s, t } => h1(*s, *t),
            FamilySpec::H2 => Ok(h2()),
            FamilySpec::H3 => Ok(h3()),
            FamilySpec::H4 { s, t } => h4(*s, *t),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = GraphError;

    /// Accepts `name` or `name(arg,...)`, e.g. `path(8)`, `spider(2,2,1)`,
    /// `partial_sun(6,0,1,3)` (cycle length, then leafed vertices), `h1(2,3)`,
    /// `h2`, `random_quasi_tree(12,no_pendants)`. Seeds come from
    /// [`FamilySpec::with_seed`], not the string.
    fn from_str(input: &str) -> Result<FamilySpec> {
        let bad = |msg: &str| GraphError::InvalidFamily(format!("'{input}': {msg}"));
        let (name, args) = match input.split_once('(') {
            None => (input.trim(), Vec::new()),
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
                let args: Vec<&str> = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(str::trim).collect()
                };
                (name.trim(), args)
            }
        };
        let nums = || -> Result<Vec<usize>> {
            args.iter()
                .map(|a| a.parse::<usize>().map_err(|_| bad("expected a number")))
                .collect()
        };
        let one = || -> Result<usize> {
            let ns = nums()?;
            if ns.len() == 1 { Ok(ns[0]) } else { Err(bad("expected one argument")) }
        };
        match name {
            "path" => Ok(FamilySpec::Path { n: one()? }),
            "cycle" => Ok(FamilySpec::Cycle { n: one()? }),
            "star" => Ok(FamilySpec::Star { n: one()? }),
            "complete" => Ok(FamilySpec::Complete { n: one()? }),
            "spider" => Ok(FamilySpec::Spider { legs: nums()? }),
            "partial_sun" => {
                let ns = nums()?;
                let (&cycle, leafed) = ns.split_first().ok_or_else(|| bad("needs a cycle length"))?;
                Ok(FamilySpec::PartialSun { cycle, leafed: leafed.to_vec() })
            }
            "random_tree" => Ok(FamilySpec::RandomTree { n: one()?, seed: 0 }),
            "random_unicyclic" => Ok(FamilySpec::RandomUnicyclic { n: one()?, seed: 0 }),
            "random_block" => {
                let ns = nums()?;
                if ns.len() != 2 {
                    return Err(bad("expected (n, max_block)"));
                }
                Ok(FamilySpec::RandomBlock { n: ns[0], max_block: ns[1], seed: 0 })
            }
            "random_quasi_tree" => {
                if args.len() != 2 {
                    return Err(bad("expected (n, mode)"));
                }
                let n = args[0].parse::<usize>().map_err(|_| bad("expected a number"))?;
                Ok(FamilySpec::RandomQuasiTree { n, mode: args[1].parse()?, seed: 0 })
            }
            "h1" => {
                let ns = nums()?;
                if ns.len() != 2 {
                    return Err(bad("expected (s, t)"));
                }
                Ok(FamilySpec::H1 { s: ns[0], t: ns[1] })
            }
            "h2" => Ok(FamilySpec::H2),
            "h3" => Ok(FamilySpec::H3),
            "h4" => {
                let ns = nums()?;
                if ns.len() != 2 {
                    return Err(bad("expected (s, t)"));
                }
                Ok(FamilySpec::H4 { s: ns[0], t: ns[1] })
            }
            other => Err(GraphError::InvalidFamily(format!("unknown family '{other}'"))),
        }
    }
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(GraphError::InvalidFamily(format!("cycle needs length >= 3, got {n}")));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
}

/// Star on `n` vertices total: center 0, leaves 1..n.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(GraphError::InvalidFamily("star needs at least one vertex".into()));
    }
    Graph::from_edges(n, &(1..n).map(|v| (0, v)).collect::<Vec<_>>())
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Center 0 with one path of each requested length hanging off it.
pub fn spider(legs: &[usize]) -> Result<Graph> {
    if legs.iter().any(|&l| l == 0) {
        return Err(GraphError::InvalidFamily("spider legs must have length >= 1".into()));
    }
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Cycle 0..l with one pendant leaf on each vertex in `leafed`; leaves are
/// appended after the cycle in ascending order of their anchors.
pub fn partial_sun(l: usize, leafed: &[usize]) -> Result<Graph> {
    let mut g = cycle(l)?;
    let mut anchors: Vec<usize> = leafed.to_vec();
    anchors.sort_unstable();
    anchors.dedup();
    if anchors.len() != leafed.len() {
        return Err(GraphError::InvalidFamily("partial_sun anchors must be distinct".into()));
    }
    for &a in &anchors {
        if a >= l {
            return Err(GraphError::InvalidFamily(format!(
                "partial_sun anchor {a} outside cycle 0..{l}"
            )));
        }
        g = g.with_vertex(&[a])?;
    }
    Ok(g)
}

/// Reconstructed H1: two squares sharing the vertex c (cycles c-x-z-x'-c and
/// c-y-w-y'-c), with s pendant leaves u1..us on z and t pendant leaves
/// v1..vt on w. Of the two shapes compatible with the surviving description
/// — this one, and two triangles sharing an edge (K4 minus an edge) with the
/// clusters on the non-adjacent pair — only this bipartite one carries the
/// claimed identities: the triangle reading admits forcing sets strictly
/// smaller than the recorded pattern {u1..us, x, y, v1..v_{t-1}}, and
/// [`validate_figure_family`] refutes it.
pub fn h1(s: usize, t: usize) -> Result<Generated> {
    if t < 1 {
        return Err(GraphError::InvalidFamily(format!("h1 requires t >= 1, got t={t}")));
    }
    let (c, x, z, xp, y, w, yp) = (0, 1, 2, 3, 4, 5, 6);
    let mut g = Graph::from_edges(
        7,
        &[(c, x), (x, z), (z, xp), (xp, c), (c, y), (y, w), (w, yp), (yp, c)],
    )?;
    let mut labels = vec![
        ("c".to_string(), c),
        ("x".to_string(), x),
        ("z".to_string(), z),
        ("x'".to_string(), xp),
        ("y".to_string(), y),
        ("w".to_string(), w),
        ("y'".to_string(), yp),
    ];
    for i in 1..=s {
        labels.push((format!("u{i}"), g.n()));
        g = g.with_vertex(&[z])?;
    }
    for j in 1..=t {
        labels.push((format!("v{j}"), g.n()));
        g = g.with_vertex(&[w])?;
    }
    Ok(Generated { graph: g, labels })
}

/// Reconstructed H2: the bowtie, two triangles sharing the cut vertex v3.
pub fn h2() -> Generated {
    let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
    let labels = (1..=5).map(|i| (format!("v{i}"), i - 1)).collect();
    Generated { graph: g, labels }
}

/// Reconstructed H3: a fan — spine path v1..v8 plus an apex v joined to the
/// whole spine.
pub fn h3() -> Generated {
    let mut edges: Vec<_> = (1..8).map(|i| (i - 1, i)).collect();
    edges.extend((0..8).map(|i| (i, 8)));
    let g = Graph::from_edges(9, &edges).unwrap();
    let mut labels: Vec<(String, usize)> = (1..=8).map(|i| (format!("v{i}"), i - 1)).collect();
    labels.push(("v".to_string(), 8));
    Generated { graph: g, labels }
}

/// Reconstructed H4: the domino (two squares sharing the edge x-y, the
/// quasi-tree analogue of H1's two triangles sharing an edge), with pendant
/// clusters on the two corners a1 and a3 of the shared-edge row. Core names
/// follow the claimed forcing-set pattern {u1..us, x, y, z, w, v1..v_{t-1}}:
/// x and y are the shared-edge vertices, z and w the corners opposite the
/// clusters.
pub fn h4(s: usize, t: usize) -> Result<Generated> {
    if t < 1 {
        return Err(GraphError::InvalidFamily(format!("h4 requires t >= 1, got t={t}")));
    }
    let (a1, a2, a3, b1, b2, b3) = (0, 1, 2, 3, 4, 5);
    let mut g = Graph::from_edges(
        6,
        &[(a1, a2), (a2, a3), (b1, b2), (b2, b3), (a1, b1), (a2, b2), (a3, b3)],
    )?;
    let mut labels = vec![
        ("a1".to_string(), a1),
        ("a2".to_string(), a2),
        ("a3".to_string(), a3),
        ("b1".to_string(), b1),
        ("b2".to_string(), b2),
        ("b3".to_string(), b3),
        ("x".to_string(), a2),
        ("y".to_string(), b2),
        ("z".to_string(), b1),
        ("w".to_string(), b3),
    ];
    for i in 1..=s {
        labels.push((format!("u{i}"), g.n()));
        g = g.with_vertex(&[a1])?;
    }
    for j in 1..=t {
        labels.push((format!("v{j}"), g.n()));
        g = g.with_vertex(&[a3])?;
    }
    Ok(Generated { graph: g, labels })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FigureFamily {
    H1,
    H2,
    H3,
    H4,
}

impl std::fmt::Display for FigureFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FigureFamily::H1 => write!(f, "H1"),
            FigureFamily::H2 => write!(f, "H2"),
            FigureFamily::H3 => write!(f, "H3"),
            FigureFamily::H4 => write!(f, "H4"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted,
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureCheck {
    pub claim: String,
    pub holds: bool,
}

/// Outcome of validating a candidate reconstruction: the exactly computed
/// Z and gp plus each claimed identity and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct FigureVerdict {
    pub family: FigureFamily,
    pub s: usize,
    pub t: usize,
    pub z: usize,
    pub gp: usize,
    pub checks: Vec<FigureCheck>,
    pub verdict: Verdict,
}

/// Compute Z and gp of `candidate` exactly and compare them against the
/// claimed identities for the named figure family at parameters (s, t).
/// H2 and H3 have no parameters; pass (0, 0).
pub fn validate_figure_family(
    family: FigureFamily,
    candidate: &Graph,
    s: usize,
    t: usize,
) -> Result<FigureVerdict> {
    let (z, _) = forcing::zero_forcing_number(candidate)?;
    let (gp, _) = genpos::gp_number(candidate)?;
    let mut checks = Vec::new();
    let mut check = |claim: String, holds: bool| checks.push(FigureCheck { claim, holds });
    match family {
        FigureFamily::H1 => {
            if s + t >= 2 {
                check(format!("Z = s+t+1 = {}", s + t + 1), z == s + t + 1);
            }
            if (2..=3).contains(&(s + t)) {
                check("Z <= 4".to_string(), z <= 4);
                check("gp = 4".to_string(), gp == 4);
            }
            if s + t >= 4 {
                check(format!("gp = s+t = {}", s + t), gp == s + t);
            }
            if s + t < 2 {
                check("no identity claimed for s+t < 2".to_string(), true);
            }
        }
        FigureFamily::H2 => {
            check("Z = 3".to_string(), z == 3);
            check("gp = 4".to_string(), gp == 4);
        }
        FigureFamily::H3 => {
            check("Z = 2".to_string(), z == 2);
            check("gp = 6".to_string(), gp == 6);
        }
        FigureFamily::H4 => {
            check(format!("Z = s+t+3 = {}", s + t + 3), z == s + t + 3);
            if s + t >= 4 {
                check(format!("gp = s+t = {}", s + t), gp == s + t);
            } else {
                check("gp identity not checked below s+t = 4".to_string(), true);
            }
        }
    }
    let verdict =
        if checks.iter().all(|c| c.holds) { Verdict::Confirmed } else { Verdict::Refuted };
    Ok(FigureVerdict { family, s, t, z, gp, checks, verdict })
}

/// Decode a vertex sequence into the tree it encodes; a sequence of length
/// k yields a tree on k+2 vertices, and every labeled tree arises from
/// exactly one sequence. Entries must be < k+2.
pub fn pruefer_decode(code: &[usize]) -> Graph {
    let n = code.len() + 2;
    assert!(code.iter().all(|&c| c < n), "sequence entry out of range");
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = leaves.pop_first().expect("a leaf always remains");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    debug_assert_eq!(last.len(), 2);
    edges.push((last[0], last[1]));
    Graph::from_edges(n, &edges).expect("decoded edges are valid")
}

/// All n^(n-2) labeled trees on n vertices, by decoding every sequence.
/// Capped at n = 8 (6^4 ... 8^6 sequences); used as an independent oracle
/// for the isomorphism-class enumerator.
pub fn labeled_trees(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(GraphError::CapExceeded { n, cap: 8 });
    }
    match n {
        0 => Ok(vec![]),
        1 => Ok(vec![Graph::edgeless(1)?]),
        2 => Ok(vec![complete(2)?]),
        _ => {
            let mut out = Vec::new();
            let mut code = vec![0usize; n - 2];
            loop {
                out.push(pruefer_decode(&code));
                // Odometer increment over base-n digits.
                let mut i = 0;
                loop {
                    if i == code.len() {
                        return Ok(out);
                    }
                    code[i] += 1;
                    if code[i] < n {
                        break;
                    }
                    code[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

fn dedup_by_key(graphs: impl IntoIterator<Item = Graph>) -> BTreeMap<CanonicalKey, Graph> {
    let mut out = BTreeMap::new();
    for g in graphs {
        let key = canon::canonical_key(&g).expect("enumeration sizes are within the canon cap");
        out.entry(key).or_insert(g);
    }
    out
}

/// One representative per isomorphism class of trees on n vertices, in
/// canonical-key order. Builds up by attaching a new leaf to every vertex of
/// every (n-1)-tree: deleting any leaf of any n-tree lands back in the
/// smaller list, so nothing is missed.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if n < 1 || n > MAX_ENUM_TREES {
        return Err(GraphError::CapExceeded { n, cap: MAX_ENUM_TREES });
    }
    let mut level = vec![Graph::edgeless(1)?];
    for _ in 2..=n {
        level = dedup_by_key(
            level
                .iter()
                .flat_map(|t| t.vertices().map(move |v| t.with_vertex(&[v]).unwrap())),
        )
        .into_values()
        .collect();
    }
    Ok(level)
}

/// One representative per isomorphism class of connected unicyclic graphs on
/// n vertices (3 <= n <= 10): every such graph is a spanning tree plus one
/// edge, so closing every non-edge of every tree covers them all.
pub fn enumerate_unicyclic(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUM_UNICYCLIC {
        return Err(GraphError::CapExceeded { n, cap: MAX_ENUM_UNICYCLIC });
    }
    if n < 3 {
        return Ok(vec![]);
    }
    let trees = enumerate_trees(n)?;
    Ok(dedup_by_key(trees.iter().flat_map(|t| {
        let t = t.clone();
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .filter({
                let t = t.clone();
                move |&(u, v)| !t.has_edge(u, v)
            })
            .map(move |(u, v)| t.with_edge(u, v).unwrap())
    }))
    .into_values()
    .collect())
}

/// One representative per isomorphism class of connected graphs on n vertices
/// with exactly m edges (n <= 9). Climbs edge by edge from the trees: any
/// connected graph with m > n-1 edges keeps connectivity after dropping a
/// cycle edge, so adding single edges to the previous level reaches
/// everything.
pub fn enumerate_connected(n: usize, m: usize) -> Result<Vec<Graph>> {
    if n < 1 || n > MAX_ENUM_CONNECTED {
        return Err(GraphError::CapExceeded { n, cap: MAX_ENUM_CONNECTED });
    }
    let max_m = n * (n - 1) / 2;
    if m > max_m || m + 1 < n {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![Graph::edgeless(1)?]);
    }
    let mut level = enumerate_trees(n)?;
    for _ in n..=m {
        level = dedup_by_key(level.iter().flat_map(|g| {
            let g = g.clone();
            (0..n)
                .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
                .filter({
                    let g = g.clone();
                    move |&(u, v)| !g.has_edge(u, v)
                })
                .map(move |(u, v)| g.with_edge(u, v).unwrap())
        }))
        .into_values()
        .collect();
    }
    Ok(level)
}

/// Every connected isomorphism class on n vertices across all edge counts
/// (n <= 9), grouped by edge count starting at the trees. Climbing once and
/// collecting each level avoids re-deriving the lower levels per call.
pub fn enumerate_connected_all(n: usize) -> Result<Vec<Graph>> {
    if n < 1 || n > MAX_ENUM_CONNECTED {
        return Err(GraphError::CapExceeded { n, cap: MAX_ENUM_CONNECTED });
    }
    if n == 1 {
        return Ok(vec![Graph::edgeless(1)?]);
    }
    let max_m = n * (n - 1) / 2;
    let mut all = Vec::new();
    let mut level = enumerate_trees(n)?;
    for m in n - 1..=max_m {
        all.extend(level.iter().cloned());
        if m == max_m {
            break;
        }
        level = dedup_by_key(level.iter().flat_map(|g| {
            let g = g.clone();
            (0..n)
                .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
                .filter({
                    let g = g.clone();
                    move |&(u, v)| !g.has_edge(u, v)
                })
                .map(move |(u, v)| g.with_edge(u, v).unwrap())
        }))
        .into_values()
        .collect();
    }
    Ok(all)
}

/// Uniform random labeled tree via a random decoding sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    match n {
        0 => Err(GraphError::InvalidFamily("random_tree needs n >= 1".into())),
        1 => Graph::edgeless(1),
        2 => complete(2),
        _ => {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Ok(pruefer_decode(&code))
        }
    }
}

/// Random connected unicyclic graph: a random tree plus one uniformly chosen
/// missing edge.
pub fn random_unicyclic<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return Err(GraphError::InvalidFamily("random_unicyclic needs n >= 3".into()));
    }
    let t = random_tree(n, rng)?;
    loop {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !t.has_edge(u, v) {
            return t.with_edge(u, v);
        }
    }
}

/// Random connected graph with exactly n+1 edges: a random unicyclic graph
/// plus one more missing edge.
pub fn random_bicyclic<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 4 {
        return Err(GraphError::InvalidFamily("random_bicyclic needs n >= 4".into()));
    }
    let g = random_unicyclic(n, rng)?;
    loop {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) {
            return g.with_edge(u, v);
        }
    }
}

/// Random connected block graph grown by gluing cliques at cut vertices.
pub fn random_block_graph<R: Rng>(n: usize, max_block: usize, rng: &mut R) -> Result<Graph> {
    if n < 1 || max_block < 2 {
        return Err(GraphError::InvalidFamily(
            "random_block needs n >= 1 and max_block >= 2".into(),
        ));
    }
    for _ in 0..RETRY_BUDGET {
        let mut g = Graph::edgeless(1)?;
        while g.n() < n {
            let room = n - g.n();
            let extra = rng.gen_range(1..=room.min(max_block - 1));
            let cut = rng.gen_range(0..g.n());
            // Attach a clique on {cut} + extra fresh vertices.
            let base = g.n();
            for i in 0..extra {
                let mut nbrs = vec![cut];
                nbrs.extend(base..base + i);
                g = g.with_vertex(&nbrs)?;
            }
        }
        if classify::classify(&g).block_graph {
            return Ok(g);
        }
    }
    Err(GraphError::RetryBudgetExhausted("random_block".into()))
}

/// Random quasi-tree: a random tree on n-1 vertices plus a fresh vertex x
/// joined to a neighbor set shaped by `mode`, then verified against the
/// requested predicate.
pub fn random_quasi_tree<R: Rng>(n: usize, mode: QuasiTreeMode, rng: &mut R) -> Result<Graph> {
    if n < 4 {
        return Err(GraphError::InvalidFamily("random_quasi_tree needs n >= 4".into()));
    }
    for _ in 0..RETRY_BUDGET {
        let t = random_tree(n - 1, rng)?;
        let leaves = t.leaves();
        let mut neighbors: Vec<usize> = match mode {
            // x must cover every leaf of the tree (and at least 2 vertices,
            // or x itself would be pendant).
            QuasiTreeMode::NoPendants => {
                let mut nbrs: Vec<usize> = leaves.to_vec();
                for v in t.vertices() {
                    if !leaves.contains(v) && rng.gen_bool(0.3) {
                        nbrs.push(v);
                    }
                }
                nbrs
            }
            // Neighbors of x keep tree degree >= 2, so their degree in the
            // result is >= 3; x then has no degree-2 neighbor.
            QuasiTreeMode::NoDeg2Neighbors => {
                let internal: Vec<usize> =
                    t.vertices().filter(|&v| !leaves.contains(v)).collect();
                if internal.is_empty() {
                    continue;
                }
                let picked: Vec<usize> =
                    internal.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if picked.is_empty() {
                    vec![internal[rng.gen_range(0..internal.len())]]
                } else {
                    picked
                }
            }
            QuasiTreeMode::Any => {
                let picked: Vec<usize> =
                    t.vertices().filter(|_| rng.gen_bool(0.4)).collect();
                if picked.is_empty() {
                    vec![rng.gen_range(0..n - 1)]
                } else {
                    picked
                }
            }
        };
        neighbors.sort_unstable();
        neighbors.dedup();
        let g = t.with_vertex(&neighbors)?;
        let flags = classify::classify(&g);
        let ok = flags.quasi_tree
            && match mode {
                QuasiTreeMode::Any => true,
                QuasiTreeMode::NoPendants => g.leaf_count() == 0,
                QuasiTreeMode::NoDeg2Neighbors => classify::quasi_vertices(&g)
                    .iter()
                    .any(|q| g.adj(q).iter().all(|u| g.degree(u) != 2)),
            };
        if ok {
            return Ok(g);
        }
    }
    Err(GraphError::RetryBudgetExhausted(format!("random_quasi_tree {mode:?}")))
}

/// Random forest with at most `max_parts` non-trivial (2+ vertex) components
/// plus a few isolated vertices, total size at most `max_n`.
pub fn random_forest<R: Rng>(max_n: usize, max_parts: usize, rng: &mut R) -> Result<Graph> {
    assert!(max_parts >= 1 && max_n >= 2 * max_parts);
    let parts = rng.gen_range(1..=max_parts);
    let isolated = rng.gen_range(0..=3.min(max_n - 2 * parts));
    let mut budget = max_n - isolated;
    let mut trees = Vec::new();
    for i in 0..parts {
        let reserve = 2 * (parts - i - 1);
        let size = rng.gen_range(2..=(budget - reserve).min(6).max(2));
        budget -= size;
        trees.push(random_tree(size, rng)?);
    }
    for _ in 0..isolated {
        trees.push(Graph::edgeless(1)?);
    }
    Graph::disjoint_union(&trees)
}

/// Random connected bipartite graph: random parts, random cross edges,
/// retried until connected.
pub fn random_bipartite_connected<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(GraphError::InvalidFamily("random_bipartite needs n >= 2".into()));
    }
    for _ in 0..RETRY_BUDGET {
        let left = rng.gen_range(1..n);
        let p = rng.gen_range(0.3..0.9);
        let mut edges = Vec::new();
        for u in 0..left {
            for v in left..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::RetryBudgetExhausted("random_bipartite".into()))
}

/// Random connected graph by edge probability, retried until connected.
pub fn random_connected<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 1 {
        return Err(GraphError::InvalidFamily("random_connected needs n >= 1".into()));
    }
    for _ in 0..RETRY_BUDGET {
        let p = rng.gen_range(0.25..0.75);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::RetryBudgetExhausted("random_connected".into()))
}

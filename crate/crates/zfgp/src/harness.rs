//! Verification harness: per-graph invariant records, theorem checks over
//! enumerated or random sources, and hunts for graphs satisfying a relation
//! between invariants.
//!
//! Everything here runs the exact solvers. The fast paths (trim-based path
//! cover, leaf/simplicial counts) exist in their own modules and are
//! cross-checked by the test suite, but verification never substitutes a
//! shortcut for the thing it is supposed to verify.

use crate::classify::{self, ClassFlags};
use crate::error::{GraphError, Result};
use crate::families::{self, QuasiTreeMode};
use crate::graph::Graph;
use crate::vertexset::VertexSet;
use crate::{canon, forcing, genpos, graph6, pathcover, trim};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;
use std::time::Instant;

const DEFAULT_RANDOM_SEED: u64 = 0x5eed_cafe;

/// Per-solver size caps. A graph over a cap gets a refusal marker in its
/// record instead of a value; it is never silently skipped or passed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolverCaps {
    pub z: usize,
    pub gp: usize,
    pub p: usize,
}

impl Default for SolverCaps {
    fn default() -> SolverCaps {
        let c = crate::DEFAULT_EXACT_CAP;
        SolverCaps { z: c, gp: c, p: c }
    }
}

impl SolverCaps {
    pub fn uniform(cap: usize) -> SolverCaps {
        SolverCaps { z: cap, gp: cap, p: cap }
    }
}

/// Wall-clock solver times. Kept in one field so that records are otherwise
/// reproducible byte for byte across runs.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct TimingsMs {
    pub z: f64,
    pub gp: f64,
    pub p: f64,
}

/// Summary of the trimming run on a unicyclic graph.
#[derive(Clone, Debug, Serialize)]
pub struct TrimSummary {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub core_n: usize,
    /// Segment sizes of the partial-sun core (empty when the core is empty).
    pub segments: Vec<usize>,
}

/// Everything the suite knows about one graph: classification, the three
/// invariants with witnesses, and (for unicyclic inputs) the trim counters.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub leaves: usize,
    pub flags: ClassFlags,
    pub z: Option<usize>,
    pub z_witness: Option<Vec<usize>>,
    pub gp: Option<usize>,
    pub gp_witness: Option<Vec<usize>>,
    pub p: Option<usize>,
    pub p_cover: Option<Vec<Vec<usize>>>,
    pub trim: Option<TrimSummary>,
    /// Solvers refused because the graph exceeds their cap.
    pub refused: Vec<String>,
    pub timings_ms: TimingsMs,
}

/// Compute a full record for one graph. Caps turn into refusal markers, not
/// errors, so batch runs keep going.
pub fn invariant_record(g: &Graph, caps: &SolverCaps) -> InvariantRecord {
    let flags = classify::classify(g);
    let mut refused = Vec::new();
    let mut timings = TimingsMs::default();

    let started = Instant::now();
    let (z, z_witness) = match forcing::zero_forcing_number_capped(g, caps.z) {
        Ok((z, w)) => (Some(z), Some(w.to_vec())),
        Err(_) => {
            refused.push("Z".to_string());
            (None, None)
        }
    };
    timings.z = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let (gp, gp_witness) = match genpos::gp_number_multi_capped(g, caps.gp) {
        Ok((gp, w)) => (Some(gp), Some(w.to_vec())),
        Err(_) => {
            refused.push("gp".to_string());
            (None, None)
        }
    };
    timings.gp = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let (p, p_cover) = match pathcover::path_cover_number_capped(g, caps.p) {
        Ok((p, cover)) => (Some(p), Some(cover)),
        Err(_) => {
            refused.push("P".to_string());
            (None, None)
        }
    };
    timings.p = started.elapsed().as_secs_f64() * 1e3;

    let trim_summary = flags.unicyclic.then(|| {
        let t = trim::trimmed_form(g);
        let segments = trim::is_partial_sun(&t.core.graph)
            .map(|ps| ps.segments.iter().map(Vec::len).collect())
            .unwrap_or_default();
        TrimSummary { n1: t.n1, n2: t.n2, n3: t.n3, core_n: t.core.graph.n(), segments }
    });

    InvariantRecord {
        graph6: graph6::encode(g).expect("harness graphs stay within graph6 range"),
        n: g.n(),
        m: g.m(),
        leaves: g.leaf_count(),
        flags,
        z,
        z_witness,
        gp,
        gp_witness,
        p,
        p_cover,
        trim: trim_summary,
        refused,
        timings_ms: timings,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10a,
    T10b,
}

pub const ALL_THEOREMS: [TheoremId; 11] = [
    TheoremId::T1,
    TheoremId::T2,
    TheoremId::T3,
    TheoremId::T4,
    TheoremId::T5,
    TheoremId::T6,
    TheoremId::T7,
    TheoremId::T8,
    TheoremId::T9,
    TheoremId::T10a,
    TheoremId::T10b,
];

impl TheoremId {
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1 => "every tree on n >= 2 vertices satisfies gp >= Z + 1",
            TheoremId::T2 => "every connected unicyclic graph satisfies gp >= Z",
            TheoremId::T3 => "every connected block graph on n >= 2 vertices satisfies gp >= Z + 1",
            TheoremId::T4 => {
                "every quasi-tree with no pendant vertices, or with a quasi-vertex having no \
                 degree-2 neighbor, satisfies gp >= Z"
            }
            TheoremId::T5 => {
                "every forest with k >= 1 non-trivial components satisfies gp >= Z + k, and both \
                 Z and gp split as component sums plus the number of isolated vertices"
            }
            TheoremId::T6 => "every connected unicyclic graph satisfies Z = P",
            TheoremId::T7 => "every tree on n >= 2 vertices satisfies gp = number of leaves",
            TheoremId::T8 => "every tree on n >= 2 vertices satisfies Z <= number of leaves - 1",
            TheoremId::T9 => {
                "every connected block graph on n >= 2 vertices satisfies gp = number of \
                 simplicial vertices"
            }
            TheoremId::T10a => {
                "every connected unicyclic graph whose trimmed form is a partial sun satisfies \
                 gp >= max(2, |U|) + n2 - n1"
            }
            TheoremId::T10b => {
                "every connected unicyclic graph whose trimmed form is empty satisfies \
                 n2 - n1 <= number of leaves"
            }
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheoremId::T10a => write!(f, "T10a"),
            TheoremId::T10b => write!(f, "T10b"),
            other => write!(f, "T{}", *other as usize + 1),
        }
    }
}

impl FromStr for TheoremId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<TheoremId> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(TheoremId::T1),
            "T2" => Ok(TheoremId::T2),
            "T3" => Ok(TheoremId::T3),
            "T4" => Ok(TheoremId::T4),
            "T5" => Ok(TheoremId::T5),
            "T6" => Ok(TheoremId::T6),
            "T7" => Ok(TheoremId::T7),
            "T8" => Ok(TheoremId::T8),
            "T9" => Ok(TheoremId::T9),
            "T10A" => Ok(TheoremId::T10a),
            "T10B" => Ok(TheoremId::T10b),
            other => Err(GraphError::InvalidFamily(format!("unknown theorem id '{other}'"))),
        }
    }
}

/// Where the graphs to check come from.
#[derive(Clone, Debug)]
pub enum Source {
    Trees { lo: usize, hi: usize },
    Unicyclic { lo: usize, hi: usize },
    /// All connected block graphs up to max_n, filtered from the connected
    /// enumeration.
    BlockGraphs { max_n: usize },
    RandomBlocks { count: usize, max_n: usize, seed: u64 },
    RandomQuasiTrees { mode: QuasiTreeMode, count: usize, max_n: usize, seed: u64 },
    RandomForests { count: usize, max_parts: usize, max_n: usize, seed: u64 },
    Explicit { name: String, graphs: Vec<Graph> },
}

impl Source {
    pub fn describe(&self) -> String {
        match self {
            Source::Trees { lo, hi } => format!("all trees, {lo} <= n <= {hi}"),
            Source::Unicyclic { lo, hi } => {
                format!("all connected unicyclic graphs, {lo} <= n <= {hi}")
            }
            Source::BlockGraphs { max_n } => {
                format!("all connected block graphs, n <= {max_n}")
            }
            Source::RandomBlocks { count, max_n, seed } => {
                format!("{count} random block graphs, n <= {max_n}, seed {seed:#x}")
            }
            Source::RandomQuasiTrees { mode, count, max_n, seed } => {
                format!("{count} random quasi-trees ({mode:?}), n <= {max_n}, seed {seed:#x}")
            }
            Source::RandomForests { count, max_parts, max_n, seed } => format!(
                "{count} random forests, <= {max_parts} non-trivial components, n <= {max_n}, \
                 seed {seed:#x}"
            ),
            Source::Explicit { name, graphs } => format!("{name} ({} graphs)", graphs.len()),
        }
    }

    pub fn graphs(&self) -> Result<Vec<Graph>> {
        match self {
            Source::Trees { lo, hi } => {
                let mut out = Vec::new();
                for n in *lo.max(&1)..=*hi {
                    out.extend(families::enumerate_trees(n)?);
                }
                Ok(out)
            }
            Source::Unicyclic { lo, hi } => {
                let mut out = Vec::new();
                for n in (*lo).max(3)..=*hi {
                    out.extend(families::enumerate_unicyclic(n)?);
                }
                Ok(out)
            }
            Source::BlockGraphs { max_n } => {
                let mut out = Vec::new();
                for n in 1..=*max_n {
                    out.extend(
                        families::enumerate_connected_all(n)?
                            .into_iter()
                            .filter(|g| classify::classify(g).block_graph),
                    );
                }
                Ok(out)
            }
            Source::RandomBlocks { count, max_n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| {
                        let n = rng.gen_range(2..=*max_n);
                        let max_block = rng.gen_range(2..=n.min(5));
                        families::random_block_graph(n, max_block, &mut rng)
                    })
                    .collect()
            }
            Source::RandomQuasiTrees { mode, count, max_n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| {
                        let n = rng.gen_range(4..=*max_n);
                        families::random_quasi_tree(n, *mode, &mut rng)
                    })
                    .collect()
            }
            Source::RandomForests { count, max_parts, max_n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|_| families::random_forest(*max_n, *max_parts, &mut rng))
                    .collect()
            }
            Source::Explicit { graphs, .. } => Ok(graphs.clone()),
        }
    }
}

/// The source each theorem is normally checked against.
pub fn default_source(id: TheoremId) -> Source {
    match id {
        TheoremId::T1 | TheoremId::T7 | TheoremId::T8 => Source::Trees { lo: 2, hi: 10 },
        TheoremId::T2 | TheoremId::T6 | TheoremId::T10a | TheoremId::T10b => {
            Source::Unicyclic { lo: 3, hi: 9 }
        }
        TheoremId::T3 | TheoremId::T9 => Source::BlockGraphs { max_n: 8 },
        TheoremId::T4 => Source::RandomQuasiTrees {
            mode: QuasiTreeMode::NoPendants,
            count: 500,
            max_n: 14,
            seed: DEFAULT_RANDOM_SEED,
        },
        TheoremId::T5 => Source::RandomForests {
            count: 500,
            max_parts: 4,
            max_n: 14,
            seed: DEFAULT_RANDOM_SEED,
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub detail: String,
    pub record: InvariantRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub statement: String,
    pub source: String,
    /// Graphs meeting the hypothesis and fully checked.
    pub checked: usize,
    /// Graphs in the source that do not meet the hypothesis.
    pub skipped: usize,
    /// Cap-refused graphs: unchecked, and explicitly not part of the verdict.
    pub unchecked: Vec<String>,
    pub violations: Vec<Violation>,
    pub pass: bool,
}

enum Outcome {
    Pass,
    Skip,
    Refused,
    Violation(String),
}

fn check_z(g: &Graph, caps: &SolverCaps) -> Result<usize> {
    Ok(forcing::zero_forcing_number_capped(g, caps.z)?.0)
}

fn check_gp(g: &Graph, caps: &SolverCaps) -> Result<usize> {
    Ok(genpos::gp_number_multi_capped(g, caps.gp)?.0)
}

fn check_p(g: &Graph, caps: &SolverCaps) -> Result<usize> {
    Ok(pathcover::path_cover_number_capped(g, caps.p)?.0)
}

/// Check one theorem instance on one graph. `Skip` means the hypothesis does
/// not apply; `Refused` means a needed solver was over its cap.
fn check_one(id: TheoremId, g: &Graph, caps: &SolverCaps) -> Outcome {
    let flags = classify::classify(g);
    let refusal = |r: Result<usize>| r.map_err(|_| ());
    let run = |cond: bool, work: &dyn Fn() -> std::result::Result<Option<String>, ()>| {
        if !cond {
            return Outcome::Skip;
        }
        match work() {
            Err(()) => Outcome::Refused,
            Ok(None) => Outcome::Pass,
            Ok(Some(detail)) => Outcome::Violation(detail),
        }
    };
    match id {
        TheoremId::T1 => run(flags.tree && g.n() >= 2, &|| {
            let z = refusal(check_z(g, caps))?;
            let gp = refusal(check_gp(g, caps))?;
            Ok((gp < z + 1).then(|| format!("gp = {gp} < Z + 1 = {}", z + 1)))
        }),
        TheoremId::T2 => run(flags.unicyclic, &|| {
            let z = refusal(check_z(g, caps))?;
            let gp = refusal(check_gp(g, caps))?;
            Ok((gp < z).then(|| format!("gp = {gp} < Z = {z}")))
        }),
        TheoremId::T3 => run(flags.block_graph && flags.connected && g.n() >= 2, &|| {
            let z = refusal(check_z(g, caps))?;
            let gp = refusal(check_gp(g, caps))?;
            Ok((gp < z + 1).then(|| format!("gp = {gp} < Z + 1 = {}", z + 1)))
        }),
        TheoremId::T4 => {
            let no_pendants = g.leaf_count() == 0;
            let quiet_quasi = || {
                classify::quasi_vertices(g)
                    .iter()
                    .any(|q| g.adj(q).iter().all(|u| g.degree(u) != 2))
            };
            run(flags.quasi_tree && (no_pendants || quiet_quasi()), &|| {
                let z = refusal(check_z(g, caps))?;
                let gp = refusal(check_gp(g, caps))?;
                Ok((gp < z).then(|| format!("gp = {gp} < Z = {z}")))
            })
        }
        TheoremId::T5 => {
            let comps = g.components();
            let nontrivial: Vec<&VertexSet> = comps.iter().filter(|c| c.len() >= 2).collect();
            let isolated = comps.len() - nontrivial.len();
            run(flags.forest && !nontrivial.is_empty(), &|| {
                let k = nontrivial.len();
                let mut z_sum = isolated;
                let mut gp_sum = isolated;
                for c in &nontrivial {
                    let sub = g.induced_subgraph(**c).expect("component vertices are in range");
                    z_sum += refusal(check_z(&sub.graph, caps))?;
                    gp_sum += refusal(check_gp(&sub.graph, caps))?;
                }
                let z = refusal(check_z(g, caps))?;
                let gp = refusal(check_gp(g, caps))?;
                if z != z_sum {
                    return Ok(Some(format!("Z = {z} differs from component sum {z_sum}")));
                }
                if gp != gp_sum {
                    return Ok(Some(format!("gp = {gp} differs from component sum {gp_sum}")));
                }
                Ok((gp < z + k).then(|| format!("gp = {gp} < Z + k = {}", z + k)))
            })
        }
        TheoremId::T6 => run(flags.unicyclic, &|| {
            let z = refusal(check_z(g, caps))?;
            let p = refusal(check_p(g, caps))?;
            Ok((z != p).then(|| format!("Z = {z} != P = {p}")))
        }),
        TheoremId::T7 => run(flags.tree && g.n() >= 2, &|| {
            let gp = refusal(check_gp(g, caps))?;
            let l = g.leaf_count();
            Ok((gp != l).then(|| format!("gp = {gp} != leaves = {l}")))
        }),
        TheoremId::T8 => run(flags.tree && g.n() >= 2, &|| {
            let z = refusal(check_z(g, caps))?;
            let l = g.leaf_count();
            Ok((z + 1 > l).then(|| format!("Z = {z} > leaves - 1 = {}", l as isize - 1)))
        }),
        TheoremId::T9 => run(flags.block_graph && flags.connected && g.n() >= 2, &|| {
            let gp = refusal(check_gp(g, caps))?;
            let s = g.simplicial_vertices().len();
            Ok((gp != s).then(|| format!("gp = {gp} != simplicial = {s}")))
        }),
        TheoremId::T10a | TheoremId::T10b => {
            if !flags.unicyclic {
                return Outcome::Skip;
            }
            let t = trim::trimmed_form(g);
            let offset = t.cover_offset();
            let core_empty = t.core.graph.n() == 0;
            match id {
                TheoremId::T10a => {
                    if core_empty {
                        return Outcome::Skip;
                    }
                    let Some(ps) = trim::is_partial_sun(&t.core.graph) else {
                        return Outcome::Violation(
                            "trimmed form is neither empty nor a partial sun".to_string(),
                        );
                    };
                    run(true, &|| {
                        let gp = refusal(check_gp(g, caps))?;
                        let bound = (ps.leafed.len().max(2)) as isize + offset;
                        Ok(((gp as isize) < bound)
                            .then(|| format!("gp = {gp} < max(2, |U|) + n2 - n1 = {bound}")))
                    })
                }
                _ => {
                    if !core_empty {
                        return Outcome::Skip;
                    }
                    let l = g.leaf_count() as isize;
                    if offset > l {
                        Outcome::Violation(format!("n2 - n1 = {offset} > leaves = {l}"))
                    } else {
                        Outcome::Pass
                    }
                }
            }
        }
    }
}

/// Run one theorem over a source. Any violation is re-verified from its
/// stored graph6 string with a fresh computation before being reported.
pub fn verify_theorem(id: TheoremId, source: &Source, caps: &SolverCaps) -> Result<TheoremReport> {
    let graphs = source.graphs()?;
    let outcomes: Vec<(String, Outcome)> = graphs
        .par_iter()
        .map(|g| {
            let line = graph6::encode(g).expect("source graphs stay within graph6 range");
            (line, check_one(id, g, caps))
        })
        .collect();

    let mut checked = 0;
    let mut skipped = 0;
    let mut unchecked = Vec::new();
    let mut violations = Vec::new();
    for (line, outcome) in outcomes {
        match outcome {
            Outcome::Pass => checked += 1,
            Outcome::Skip => skipped += 1,
            Outcome::Refused => unchecked.push(line),
            Outcome::Violation(detail) => {
                checked += 1;
                let again = graph6::decode(&line)?;
                match check_one(id, &again, caps) {
                    Outcome::Violation(second) if second == detail => {}
                    _ => panic!("violation on {line} did not reproduce from its graph6 record"),
                }
                violations.push(Violation {
                    graph6: line,
                    detail,
                    record: invariant_record(&again, caps),
                });
            }
        }
    }
    let pass = violations.is_empty();
    Ok(TheoremReport {
        theorem: id.to_string(),
        statement: id.statement().to_string(),
        source: source.describe(),
        checked,
        skipped,
        unchecked,
        violations,
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HuntClass {
    Bicyclic,
    QuasiTree,
    Bipartite,
    Any,
}

impl FromStr for HuntClass {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<HuntClass> {
        match s {
            "bicyclic" => Ok(HuntClass::Bicyclic),
            "quasi_tree" => Ok(HuntClass::QuasiTree),
            "bipartite" => Ok(HuntClass::Bipartite),
            "any" => Ok(HuntClass::Any),
            other => Err(GraphError::InvalidFamily(format!("unknown hunt class '{other}'"))),
        }
    }
}

impl HuntClass {
    fn admits(self, flags: &ClassFlags) -> bool {
        match self {
            HuntClass::Bicyclic => flags.bicyclic,
            HuntClass::QuasiTree => flags.quasi_tree,
            HuntClass::Bipartite => flags.connected && flags.bipartite,
            HuntClass::Any => flags.connected,
        }
    }

    /// Smallest n on which the class is non-empty / the sampler is defined.
    fn min_n(self) -> usize {
        match self {
            HuntClass::Bicyclic => 4,
            HuntClass::QuasiTree => 4,
            HuntClass::Bipartite => 2,
            HuntClass::Any => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Z,
    Gp,
    P,
    Leaves,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Z => "Z",
            Invariant::Gp => "gp",
            Invariant::P => "P",
            Invariant::Leaves => "leaves",
        }
    }

    fn of(self, record: &InvariantRecord) -> Option<usize> {
        match self {
            Invariant::Z => record.z,
            Invariant::Gp => record.gp,
            Invariant::P => record.p,
            Invariant::Leaves => Some(record.leaves),
        }
    }
}

impl FromStr for Invariant {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Invariant> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" => Ok(Invariant::Z),
            "gp" => Ok(Invariant::Gp),
            "p" => Ok(Invariant::P),
            "l" | "ell" | "leaves" => Ok(Invariant::Leaves),
            other => Err(GraphError::InvalidFamily(format!("unknown invariant '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl RelOp {
    fn eval(self, a: usize, b: usize) -> bool {
        match self {
            RelOp::Lt => a < b,
            RelOp::Le => a <= b,
            RelOp::Eq => a == b,
            RelOp::Ne => a != b,
            RelOp::Ge => a >= b,
            RelOp::Gt => a > b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
            RelOp::Ge => ">=",
            RelOp::Gt => ">",
        }
    }
}

/// A comparison between two invariants, e.g. `Z > gp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Invariant,
    pub op: RelOp,
    pub rhs: Invariant,
}

impl Relation {
    pub fn eval(&self, lhs: usize, rhs: usize) -> bool {
        self.op.eval(lhs, rhs)
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {}", self.lhs.name(), self.op.symbol(), self.rhs.name())
    }
}

impl FromStr for Relation {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Relation> {
        // Two-character operators must be tried before their prefixes.
        for (token, op) in [
            (">=", RelOp::Ge),
            ("<=", RelOp::Le),
            ("!=", RelOp::Ne),
            ("==", RelOp::Eq),
            (">", RelOp::Gt),
            ("<", RelOp::Lt),
            ("=", RelOp::Eq),
        ] {
            if let Some((l, r)) = s.split_once(token) {
                return Ok(Relation { lhs: l.parse()?, op, rhs: r.parse()? });
            }
        }
        Err(GraphError::InvalidFamily(format!("no comparison operator in '{s}'")))
    }
}

#[derive(Clone, Debug)]
pub enum HuntMode {
    Exhaustive,
    Random { seed: u64, budget: usize },
}

impl HuntMode {
    fn describe(&self) -> String {
        match self {
            HuntMode::Exhaustive => "exhaustive".to_string(),
            HuntMode::Random { seed, budget } => {
                format!("random(seed {seed:#x}, budget {budget})")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntHit {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub lhs: usize,
    pub rhs: usize,
    /// Full record: both witnesses certify the hit.
    pub record: InvariantRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntReport {
    pub class: HuntClass,
    pub relation: String,
    pub lo: usize,
    pub hi: usize,
    pub mode: String,
    pub checked: usize,
    pub unchecked: Vec<String>,
    pub hits: Vec<HuntHit>,
}

/// Ordering key for deterministic hit lists: canonical key when the graph
/// fits under the canonical cap, its graph6 line otherwise. Within one n the
/// fallback never mixes with real keys.
fn hit_key(g: &Graph, line: &str) -> Vec<u8> {
    match canon::canonical_key(g) {
        Ok(key) => key.as_bytes().to_vec(),
        Err(_) => {
            let mut k = vec![g.n() as u8, 0xff];
            k.extend_from_slice(line.as_bytes());
            k
        }
    }
}

/// Search a graph class for instances of a relation. Exhaustive mode walks
/// the enumeration (deduplicated up to isomorphism); random mode draws from
/// the class sampler. Hits are sorted by canonical key, so reports do not
/// depend on worker count or discovery order.
pub fn hunt(
    class: HuntClass,
    relation: Relation,
    lo: usize,
    hi: usize,
    mode: &HuntMode,
    caps: &SolverCaps,
) -> Result<HuntReport> {
    let lo = lo.max(class.min_n());
    let mut candidates: Vec<Graph> = Vec::new();
    match mode {
        HuntMode::Exhaustive => {
            for n in lo..=hi {
                match class {
                    HuntClass::Bicyclic => candidates.extend(families::enumerate_connected(n, n + 1)?),
                    _ => candidates.extend(
                        families::enumerate_connected_all(n)?
                            .into_iter()
                            .filter(|g| class.admits(&classify::classify(g))),
                    ),
                }
            }
        }
        HuntMode::Random { seed, budget } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*budget {
                if hi < lo {
                    break;
                }
                let n = rng.gen_range(lo..=hi);
                let g = match class {
                    HuntClass::Bicyclic => families::random_bicyclic(n, &mut rng)?,
                    HuntClass::QuasiTree => {
                        families::random_quasi_tree(n, QuasiTreeMode::Any, &mut rng)?
                    }
                    HuntClass::Bipartite => families::random_bipartite_connected(n, &mut rng)?,
                    HuntClass::Any => families::random_connected(n, &mut rng)?,
                };
                candidates.push(g);
            }
        }
    }

    let evaluated: Vec<(Graph, InvariantRecord)> = candidates
        .into_par_iter()
        .map(|g| {
            let record = invariant_record(&g, caps);
            (g, record)
        })
        .collect();

    let mut checked = 0;
    let mut unchecked = Vec::new();
    let mut keyed_hits: Vec<(Vec<u8>, HuntHit)> = Vec::new();
    for (g, record) in evaluated {
        let (Some(lhs), Some(rhs)) = (relation.lhs.of(&record), relation.rhs.of(&record)) else {
            unchecked.push(record.graph6.clone());
            continue;
        };
        checked += 1;
        if relation.eval(lhs, rhs) {
            let key = hit_key(&g, &record.graph6);
            keyed_hits.push((
                key,
                HuntHit {
                    graph6: record.graph6.clone(),
                    n: record.n,
                    m: record.m,
                    lhs,
                    rhs,
                    record,
                },
            ));
        }
    }
    keyed_hits.sort_by(|a, b| a.0.cmp(&b.0));
    keyed_hits.dedup_by(|a, b| a.0 == b.0);
    Ok(HuntReport {
        class,
        relation: relation.to_string(),
        lo,
        hi,
        mode: mode.describe(),
        checked,
        unchecked,
        hits: keyed_hits.into_iter().map(|(_, h)| h).collect(),
    })
}

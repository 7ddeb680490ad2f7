//! Exact computation of three graph invariants on small graphs — the zero
//! forcing number `Z`, the general position number `gp`, and the path cover
//! number `P` — together with the trimming reduction for path covers, figure
//! family generators, small-graph enumeration up to isomorphism, and a
//! verification harness that checks the known relations between the
//! invariants on trees, unicyclic graphs, block graphs, quasi-trees, and
//! forests.
//!
//! Everything here is exact: solvers either return a provably optimal value
//! with a witness, or refuse to run when the instance exceeds the configured
//! cap. There are no heuristics reported as answers.

pub mod canon;
pub mod classify;
pub mod error;
pub mod families;
pub mod forcing;
pub mod genpos;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod metric;
pub mod pathcover;
pub mod trim;
pub mod vertexset;

pub use error::{GraphError, Result};
pub use graph::{Graph, InducedSubgraph, MAX_VERTICES};
pub use vertexset::VertexSet;

/// Default cap on `n` for the exponential exact solvers (`Z`, `gp`, `P`).
/// Larger instances are refused, never approximated. Override per call with
/// the `_capped` variants, or via `--cap` / the `ZFGP_CAP` environment
/// variable in the CLI.
pub const DEFAULT_EXACT_CAP: usize = 16;

/// Default cap on `n` for canonical-form computation and enumeration dedup.
pub const DEFAULT_CANON_CAP: usize = 12;

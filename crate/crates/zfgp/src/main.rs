//! Command-line front end: compute invariants, classify, trim, generate,
//! verify theorems, and hunt for relation witnesses.
//!
//! Exit codes: 0 = success (all checks pass / no hits), 1 = mathematical
//! outcome (violations or hits found), 2 = usage or input error. Reports are
//! line-delimited JSON objects embedding the resolved run configuration;
//! wall-clock times live in their own fields so the rest of a report is
//! reproducible byte for byte.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;
use zfgp::families::FamilySpec;
use zfgp::harness::{
    self, HuntClass, HuntMode, Relation, SolverCaps, Source, TheoremId, ALL_THEOREMS,
};
use zfgp::{classify, families, graph6, trim, Graph};

#[derive(Parser)]
#[command(name = "zfgp", version, about = "Zero forcing, general position, and path covers")]
struct Cli {
    /// Solver size cap (also via the ZFGP_CAP environment variable).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Worker threads for batch runs (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Inclusive n-range: `4..8`, `4..=8`, or a single `8`.
#[derive(Clone, Copy, Debug)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<NRange, String> {
        let parse = |t: &str| t.parse::<usize>().map_err(|_| format!("bad bound '{t}' in '{s}'"));
        if let Some((a, b)) = s.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (lo, hi) = (parse(a)?, parse(b)?);
            if lo > hi {
                return Err(format!("empty range '{s}'"));
            }
            Ok(NRange { lo, hi })
        } else {
            let v = parse(s)?;
            Ok(NRange { lo: v, hi: v })
        }
    }
}

#[derive(Args)]
struct GraphInputs {
    /// graph6 lines given directly on the command line.
    #[arg(long = "graph6", value_name = "LINE")]
    graph6: Vec<String>,
    /// File of graph6 lines (one per line, # comments ignored); `-` = stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generate the input from a family spec instead, e.g. `h1(2,3)`.
    #[arg(long)]
    family: Option<String>,
    /// Seed for random family kinds.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Z, gp, P, classification, and trim data per input graph.
    Compute(GraphInputs),
    /// Classify input graphs (tree/unicyclic/block/quasi-tree/... flags).
    Classify(GraphInputs),
    /// Trim input graphs and log the replayable deletion sequence.
    Trim(GraphInputs),
    /// Emit graphs as graph6 lines, from a family spec or an enumeration.
    Gen {
        /// Family spec, e.g. `path(8)`, `partial_sun(6,0,1,3)`, `h1(2,2)`.
        #[arg(long)]
        family: Option<String>,
        /// Enumerate a class instead: trees | unicyclic | bicyclic | connected.
        #[arg(long, value_name = "CLASS")]
        enumerate: Option<String>,
        #[arg(long)]
        n: Option<NRange>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How many graphs to draw from a random family (seed advances by 1).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check theorems over enumerated or random sources.
    Verify {
        /// Theorem id (T1..T10b). Omit to run the whole catalogue.
        #[arg(long)]
        theorem: Option<String>,
        /// Check over all trees in the n-range.
        #[arg(long)]
        trees: bool,
        /// Check over all connected unicyclic graphs in the n-range.
        #[arg(long)]
        unicyclic: bool,
        #[arg(long)]
        n: Option<NRange>,
    },
    /// Search a graph class for witnesses of a relation such as `Z>gp`.
    Hunt {
        /// bicyclic | quasi_tree | bipartite | any
        #[arg(long)]
        class: String,
        /// Relation between Z, gp, P, leaves; e.g. `Z>gp` or `P=Z`.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        n: NRange,
        /// Walk the full enumeration (default if no budget is given).
        #[arg(long)]
        exhaustive: bool,
        /// Random mode: number of samples to draw.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// The resolved configuration embedded in every report.
#[derive(Serialize)]
struct RunConfig {
    tool: String,
    version: String,
    argv: Vec<String>,
    cap: usize,
    workers: Option<usize>,
    format: String,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("zfgp: error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn resolve_cap(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("ZFGP_CAP") {
        Ok(text) => text
            .parse::<usize>()
            .with_context(|| format!("ZFGP_CAP must be a number, got '{text}'")),
        Err(_) => Ok(zfgp::DEFAULT_EXACT_CAP),
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let cap = resolve_cap(cli.cap)?;
    let caps = SolverCaps::uniform(cap);
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .context("worker pool already initialized")?;
    }
    let config = RunConfig {
        tool: "zfgp".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        argv: std::env::args().skip(1).collect(),
        cap,
        workers: cli.workers,
        format: match cli.format {
            Format::Json => "json".to_string(),
            Format::Table => "table".to_string(),
        },
    };
    let format = cli.format;
    match cli.command {
        Command::Compute(inputs) => compute_cmd(&inputs, &caps, &config, format),
        Command::Classify(inputs) => classify_cmd(&inputs, &config, format),
        Command::Trim(inputs) => trim_cmd(&inputs, &config, format),
        Command::Gen { family, enumerate, n, seed, count, out } => {
            gen_cmd(family, enumerate, n, seed, count, out)
        }
        Command::Verify { theorem, trees, unicyclic, n } => {
            verify_cmd(theorem, trees, unicyclic, n, &caps, &config, format)
        }
        Command::Hunt { class, relation, n, exhaustive, budget, seed } => {
            hunt_cmd(&class, &relation, n, exhaustive, budget, seed, &caps, &config, format)
        }
    }
}

/// Gather input graphs from flags, a file, stdin, or a family spec.
fn gather(inputs: &GraphInputs) -> anyhow::Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for line in &inputs.graph6 {
        graphs.push(graph6::decode(line.trim()).with_context(|| format!("bad graph6 '{line}'"))?);
    }
    if let Some(spec_text) = &inputs.family {
        let spec: FamilySpec = spec_text
            .parse()
            .with_context(|| format!("bad family spec '{spec_text}'"))?;
        graphs.push(spec.with_seed(inputs.seed).generate()?.graph);
    }
    if let Some(path) = &inputs.input {
        let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
            Box::new(std::io::stdin().lock())
        } else {
            Box::new(std::io::BufReader::new(
                std::fs::File::open(path).with_context(|| format!("open {}", path.display()))?,
            ))
        };
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            graphs
                .push(graph6::decode(line).with_context(|| format!("line {}: '{line}'", i + 1))?);
        }
    }
    if graphs.is_empty() {
        bail!("no input graphs; pass --graph6, --input, or --family");
    }
    Ok(graphs)
}

fn emit_config(config: &RunConfig, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string(&serde_json::json!({ "config": config }))?),
        Format::Table => println!("# zfgp {} | cap {}", config.version, config.cap),
    }
    Ok(())
}

fn compute_cmd(
    inputs: &GraphInputs,
    caps: &SolverCaps,
    config: &RunConfig,
    format: Format,
) -> anyhow::Result<i32> {
    let graphs = gather(inputs)?;
    emit_config(config, format)?;
    if format == Format::Table {
        println!("{:<14} {:>3} {:>3} {:>6} {:>4} {:>4} {:>4}  classes", "graph6", "n", "m", "leaves", "Z", "gp", "P");
    }
    for g in &graphs {
        let record = harness::invariant_record(&g, caps);
        match format {
            Format::Json => println!("{}", serde_json::to_string(&record)?),
            Format::Table => {
                let show = |v: Option<usize>| {
                    v.map(|x| x.to_string()).unwrap_or_else(|| "-".to_string())
                };
                let mut classes = Vec::new();
                for (on, name) in [
                    (record.flags.tree, "tree"),
                    (record.flags.unicyclic, "unicyclic"),
                    (record.flags.bicyclic, "bicyclic"),
                    (record.flags.block_graph, "block"),
                    (record.flags.quasi_tree, "quasi-tree"),
                    (record.flags.bipartite, "bipartite"),
                ] {
                    if on {
                        classes.push(name);
                    }
                }
                println!(
                    "{:<14} {:>3} {:>3} {:>6} {:>4} {:>4} {:>4}  {}",
                    record.graph6,
                    record.n,
                    record.m,
                    record.leaves,
                    show(record.z),
                    show(record.gp),
                    show(record.p),
                    classes.join(",")
                );
            }
        }
    }
    Ok(0)
}

fn classify_cmd(inputs: &GraphInputs, config: &RunConfig, format: Format) -> anyhow::Result<i32> {
    let graphs = gather(inputs)?;
    emit_config(config, format)?;
    for g in &graphs {
        let flags = classify::classify(g);
        let line = graph6::encode(g)?;
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string(&serde_json::json!({ "graph6": line, "flags": flags }))?
            ),
            Format::Table => println!("{line}: {flags:?}"),
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct TrimOutput {
    graph6: String,
    steps: Vec<trim::TrimStep>,
    n1: usize,
    n2: usize,
    n3: usize,
    cover_offset: isize,
    core_graph6: String,
    /// Original labels of the surviving vertices, in core order.
    core_vertices: Vec<usize>,
}

fn trim_cmd(inputs: &GraphInputs, config: &RunConfig, format: Format) -> anyhow::Result<i32> {
    let graphs = gather(inputs)?;
    emit_config(config, format)?;
    for g in &graphs {
        let t = trim::trimmed_form(g);
        let out = TrimOutput {
            graph6: graph6::encode(g)?,
            n1: t.n1,
            n2: t.n2,
            n3: t.n3,
            cover_offset: t.cover_offset(),
            core_graph6: graph6::encode(&t.core.graph)?,
            core_vertices: t.core.to_original.clone(),
            steps: t.steps,
        };
        match format {
            Format::Json => println!("{}", serde_json::to_string(&out)?),
            Format::Table => println!(
                "{}: {} steps (n1={}, n2={}, n3={}), core {}",
                out.graph6,
                out.steps.len(),
                out.n1,
                out.n2,
                out.n3,
                out.core_graph6
            ),
        }
    }
    Ok(0)
}

fn gen_cmd(
    family: Option<String>,
    enumerate: Option<String>,
    n: Option<NRange>,
    seed: u64,
    count: usize,
    out: Option<PathBuf>,
) -> anyhow::Result<i32> {
    let mut lines = Vec::new();
    match (family, enumerate) {
        (Some(spec_text), None) => {
            let spec: FamilySpec = spec_text
                .parse()
                .with_context(|| format!("bad family spec '{spec_text}'"))?;
            for i in 0..count {
                let g = spec.clone().with_seed(seed + i as u64).generate()?.graph;
                lines.push(graph6::encode(&g)?);
            }
        }
        (None, Some(class)) => {
            let range = n.context("--enumerate needs --n")?;
            for n in range.lo..=range.hi {
                let batch = match class.as_str() {
                    "trees" => families::enumerate_trees(n)?,
                    "unicyclic" => families::enumerate_unicyclic(n)?,
                    "bicyclic" => families::enumerate_connected(n, n + 1)?,
                    "connected" => families::enumerate_connected_all(n)?,
                    other => bail!("unknown enumeration class '{other}'"),
                };
                for g in batch {
                    lines.push(graph6::encode(&g)?);
                }
            }
        }
        _ => bail!("gen needs exactly one of --family or --enumerate"),
    }
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(&path)
                .with_context(|| format!("create {}", path.display()))?;
            for line in &lines {
                writeln!(f, "{line}")?;
            }
        }
        None => {
            for line in &lines {
                println!("{line}");
            }
        }
    }
    Ok(0)
}

fn verify_cmd(
    theorem: Option<String>,
    trees: bool,
    unicyclic: bool,
    n: Option<NRange>,
    caps: &SolverCaps,
    config: &RunConfig,
    format: Format,
) -> anyhow::Result<i32> {
    let ids: Vec<TheoremId> = match theorem {
        Some(text) => vec![text.parse()?],
        None => ALL_THEOREMS.to_vec(),
    };
    let mut all_pass = true;
    for id in ids {
        let source = if trees {
            let r = n.unwrap_or(NRange { lo: 2, hi: 10 });
            Source::Trees { lo: r.lo, hi: r.hi }
        } else if unicyclic {
            let r = n.unwrap_or(NRange { lo: 3, hi: 9 });
            Source::Unicyclic { lo: r.lo, hi: r.hi }
        } else {
            harness::default_source(id)
        };
        let started = Instant::now();
        let report = harness::verify_theorem(id, &source, caps)?;
        let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        all_pass &= report.pass;
        match format {
            Format::Json => println!(
                "{}",
                serde_json::to_string(&serde_json::json!({
                    "config": config,
                    "report": report,
                    "elapsed_ms": elapsed_ms,
                }))?
            ),
            Format::Table => println!(
                "{:<5} {}  checked {:>6}  skipped {:>6}  unchecked {:>3}  violations {:>3}  [{}]",
                report.theorem,
                if report.pass { "pass" } else { "FAIL" },
                report.checked,
                report.skipped,
                report.unchecked.len(),
                report.violations.len(),
                report.source
            ),
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn hunt_cmd(
    class: &str,
    relation: &str,
    n: NRange,
    exhaustive: bool,
    budget: Option<usize>,
    seed: u64,
    caps: &SolverCaps,
    config: &RunConfig,
    format: Format,
) -> anyhow::Result<i32> {
    let class: HuntClass = class.parse()?;
    let relation: Relation = relation.parse()?;
    let mode = match (exhaustive, budget) {
        (true, Some(_)) => bail!("choose one of --exhaustive or --budget"),
        (_, Some(budget)) => HuntMode::Random { seed, budget },
        _ => HuntMode::Exhaustive,
    };
    let started = Instant::now();
    let report = harness::hunt(class, relation, n.lo, n.hi, &mode, caps)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let hits = report.hits.len();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&serde_json::json!({
                "config": config,
                "report": report,
                "elapsed_ms": elapsed_ms,
            }))?
        ),
        Format::Table => {
            println!(
                "# hunt {} over {:?} n {}..{} ({}): {} checked, {} hits",
                report.relation, report.class, report.lo, report.hi, report.mode, report.checked,
                hits
            );
            for hit in &report.hits {
                println!(
                    "{:<14} n={} m={}  {} = {}, {} = {}",
                    hit.graph6,
                    hit.n,
                    hit.m,
                    relation.lhs.name(),
                    hit.lhs,
                    relation.rhs.name(),
                    hit.rhs
                );
            }
        }
    }
    Ok(if hits > 0 { 1 } else { 0 })
}

//! The `defpart` command line.
//!
//! Exit codes: 0 success, 1 parse or malformed input, 2 hypothesis not met
//! (including clique checks for coloring), 3 internal invariant or chain
//! overflow, 4 verification failure, 5 size guard.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::coloring::{
    chromatic_upper_with, triangle_free_color_with, ColoringError, ColoringPlan,
};
use crate::engine::{
    potential, solve, EngineError, Instance, Mode, Partition, Potential, SolveConfig,
};
use crate::graph::{emit_graph, generate, load_graph, Format, Graph, GraphError, GraphSpec};
use crate::permissible::{family_for, EmptyFamily, PermissibleFamily};
use crate::verify::{
    oracle_chromatic, oracle_find_partition, verify_coloring, verify_partition, ValidityReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "defpart",
    version,
    about = "Vertex partitions with per-part degree caps and colorings built from them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition a graph into k parts with the given degree caps.
    Partition(PartitionArgs),
    /// Color a graph using a partition plan.
    Color(ColorArgs),
    /// Check a partition file against a graph.
    Verify(VerifyArgs),
    /// Brute-force existence check for small instances.
    Oracle(OracleArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Run a fixed suite of instances and print CSV statistics.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GraphSource {
    /// Graph file (DIMACS .col or edge list).
    #[arg(
        long,
        required_unless_present = "generator",
        conflicts_with = "generator"
    )]
    pub input: Option<String>,
    /// Generator spec, e.g. `petersen`, `gnp:20,0.2`, `regular:10,3`.
    #[arg(long = "gen")]
    pub generator: Option<String>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct CapsArgs {
    #[arg(long, default_value = "main")]
    pub mode: Mode,
    /// Number of parts; must match the length of `--r` when both are given.
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated degree caps.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[command(flatten)]
    pub caps: CapsArgs,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
    /// Write the move trace to stderr as JSON lines.
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub chain_cap: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(short = 'o')]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// `kostochka` (triangle-free graphs) or `cliquefree:R`.
    #[arg(long, default_value = "kostochka")]
    pub plan: String,
    /// Use the plain plan instead of the one with independent sets.
    #[arg(long)]
    pub no_economical: bool,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub chain_cap: Option<usize>,
    #[arg(short = 'o')]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Partition file as written by `partition`.
    #[arg(long)]
    pub partition: String,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, default_value = "main")]
    pub mode: Mode,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',', required_unless_present = "chromatic")]
    pub r: Vec<usize>,
    /// Report the chromatic number instead.
    #[arg(long)]
    pub chromatic: bool,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "gen")]
    pub generator: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "dimacs")]
    pub format: Format,
    #[arg(short = 'o')]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "smoke")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'o')]
    pub out: Option<String>,
}

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = if matches!(e, GraphError::SizeGuardExceeded { .. }) {
            5
        } else {
            1
        };
        Failure::new(code, e.to_string())
    }
}

fn engine_failure(e: &EngineError) -> Failure {
    let code = match e {
        EngineError::HypothesisNotMet { .. } => 2,
        EngineError::BadInstance(_) => 1,
        EngineError::NoEscape { .. }
        | EngineError::ChainOverflow { .. }
        | EngineError::InvariantViolation { .. } => 3,
    };
    Failure::new(code, e.to_string())
}

/// Report written by `partition`; fields appear in this order.
#[derive(Debug, Serialize, Deserialize)]
pub struct PartitionReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub r: Vec<usize>,
    pub mode: Mode,
    pub parts: Vec<Vec<usize>>,
    pub potential: Potential,
    pub valid: bool,
    pub moves: usize,
}

/// Report written by `color`; fields appear in this order.
#[derive(Debug, Serialize)]
pub struct ColorReport {
    pub colors: Vec<usize>,
    pub used: usize,
    pub bound: usize,
    pub plan: ColoringPlan,
    pub proper: bool,
}

#[derive(Debug, Serialize)]
struct OracleReport {
    exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<Vec<usize>>>,
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Partition(a) => cmd_partition(a, out, err),
        Command::Color(a) => cmd_color(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(1, format!("cannot read {path}: {e}")))
}

fn load(source: &GraphSource) -> Result<Graph, Failure> {
    if let Some(spec) = &source.generator {
        let spec: GraphSpec = spec.parse()?;
        return Ok(generate(&spec, source.seed)?);
    }
    let path = source
        .input
        .as_deref()
        .expect("clap requires a graph source");
    let format = match &source.format {
        Some(f) => f.parse::<Format>().map_err(|e| Failure::new(1, e))?,
        None => Format::from_path(path),
    };
    Ok(load_graph(&read_file(path)?, format)?)
}

fn deliver(text: &str, path: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::new(1, format!("cannot write {p}: {e}")))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(1, e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

fn families(mode: Mode, r: &[usize]) -> Vec<std::sync::Arc<dyn PermissibleFamily>> {
    match mode {
        Mode::Main => r.iter().map(|&ri| family_for(ri)).collect(),
        Mode::Lovasz => r
            .iter()
            .map(|&ri| std::sync::Arc::new(EmptyFamily { r: ri }) as _)
            .collect(),
    }
}

fn check_k(k: Option<usize>, r: &[usize]) -> Result<(), Failure> {
    match k {
        Some(k) if k != r.len() => Err(Failure::new(
            1,
            format!("--k {k} does not match {} caps in --r", r.len()),
        )),
        _ if r.is_empty() => Err(Failure::new(1, "--r needs at least one cap")),
        _ => Ok(()),
    }
}

fn solve_config(chain_cap: Option<usize>, trace: bool) -> SolveConfig {
    SolveConfig {
        chain_cap,
        trace,
        ..SolveConfig::default()
    }
}

fn dump_trace(e: &EngineError, trace: bool, err: &mut dyn Write) {
    if let (true, Some(t)) = (trace, e.trace()) {
        let _ = err.write_all(t.to_json_lines().as_bytes());
    }
}

fn cmd_partition(
    a: &PartitionArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    let g = load(&a.source)?;
    check_k(a.caps.k, &a.caps.r)?;
    let r = a.caps.r.clone();
    let inst = Instance::new(g.clone(), r.clone(), families(a.caps.mode, &r), a.caps.mode)
        .map_err(|e| engine_failure(&e))?;
    let sol = match solve(&inst, &solve_config(a.chain_cap, a.trace)) {
        Ok(sol) => sol,
        Err(e) => {
            dump_trace(&e, a.trace, err);
            return Err(engine_failure(&e));
        }
    };
    if a.trace {
        let _ = err.write_all(sol.trace.to_json_lines().as_bytes());
    }
    let report = verify_partition(&inst, &sol.partition);
    if !report.ok {
        return Err(Failure::new(
            4,
            format!(
                "solver output failed verification: {}",
                to_json(&report).trim_end()
            ),
        ));
    }
    let rep = PartitionReport {
        n: g.n(),
        m: g.m(),
        k: inst.k(),
        r,
        mode: a.caps.mode,
        parts: sol
            .partition
            .parts()
            .into_iter()
            .map(|p| p.into_vec())
            .collect(),
        potential: potential(&inst, &sol.partition),
        valid: report.ok,
        moves: sol.stats.moves,
    };
    let text = match a.output {
        OutputFormat::Json => to_json(&rep),
        OutputFormat::Text => {
            let mut s = format!(
                "n={} m={} k={} mode={} r={:?}\n",
                rep.n, rep.m, rep.k, rep.mode, rep.r
            );
            for (i, p) in rep.parts.iter().enumerate() {
                s.push_str(&format!("part {i}: {p:?}\n"));
            }
            let pot = rep.potential;
            s.push_str(&format!(
                "potential f={} c={} p={}\nvalid={} moves={}\n",
                pot.f, pot.c, pot.p, rep.valid, rep.moves
            ));
            s
        }
    };
    deliver(&text, a.out.as_deref(), out)
}

enum PlanChoice {
    Kostochka,
    CliqueFree(usize),
}

fn parse_plan(s: &str) -> Result<PlanChoice, Failure> {
    if s == "kostochka" {
        return Ok(PlanChoice::Kostochka);
    }
    s.strip_prefix("cliquefree:")
        .and_then(|r| r.parse().ok())
        .map(PlanChoice::CliqueFree)
        .ok_or_else(|| {
            Failure::new(
                1,
                format!("unknown plan {s:?}; expected kostochka or cliquefree:R"),
            )
        })
}

fn cmd_color(a: &ColorArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let g = load(&a.source)?;
    let config = solve_config(a.chain_cap, a.trace);
    let economical = !a.no_economical;
    let result = match parse_plan(&a.plan)? {
        PlanChoice::Kostochka => triangle_free_color_with(&g, economical, &config),
        PlanChoice::CliqueFree(r) => chromatic_upper_with(&g, r, economical, &config),
    };
    let coloring = result.map_err(|e| match e {
        ColoringError::NotCliqueFree { .. } | ColoringError::NotTriangleFree => {
            Failure::new(2, e.to_string())
        }
        ColoringError::BadParameter(_) => Failure::new(1, e.to_string()),
        ColoringError::Graph(g) => Failure::from(g),
        ColoringError::Engine(ref inner) => {
            dump_trace(inner, a.trace, err);
            engine_failure(inner)
        }
        _ => Failure::new(3, e.to_string()),
    })?;
    let proper = verify_coloring(&g, &coloring.colors);
    if !proper || coloring.used > coloring.bound {
        return Err(Failure::new(
            4,
            format!(
                "coloring check failed: proper={proper} used={} bound={}",
                coloring.used, coloring.bound
            ),
        ));
    }
    let rep = ColorReport {
        colors: coloring.colors,
        used: coloring.used,
        bound: coloring.bound,
        plan: coloring.plan,
        proper,
    };
    let text = match a.output {
        OutputFormat::Json => to_json(&rep),
        OutputFormat::Text => format!(
            "used={} bound={} proper={} plan r={:?}\ncolors={:?}\n",
            rep.used, rep.bound, rep.proper, rep.plan.r, rep.colors
        ),
    };
    deliver(&text, a.out.as_deref(), out)
}

/// The fields of a partition file that `verify` reads.
#[derive(Debug, Deserialize)]
struct PartitionFile {
    k: usize,
    r: Vec<usize>,
    mode: Mode,
    parts: Vec<Vec<usize>>,
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let g = load(&a.source)?;
    let text = read_file(&a.partition)?;
    let file: PartitionFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(1, format!("malformed partition file: {e}")))?;
    if file.r.len() != file.k || file.parts.len() != file.k {
        return Err(Failure::new(
            1,
            format!(
                "partition file has k={} but {} caps and {} parts",
                file.k,
                file.r.len(),
                file.parts.len()
            ),
        ));
    }
    let inst = Instance::unchecked(
        g.clone(),
        file.r.clone(),
        families(file.mode, &file.r),
        file.mode,
    )
    .map_err(|e| Failure::new(1, e.to_string()))?;

    let mut assignment = vec![None; g.n()];
    for (i, members) in file.parts.iter().enumerate() {
        for &v in members {
            match assignment.get_mut(v) {
                None => {
                    return Err(Failure::new(
                        4,
                        format!(
                            "vertex {v} is out of range for a graph on {} vertices",
                            g.n()
                        ),
                    ))
                }
                Some(Some(prev)) => {
                    return Err(Failure::new(
                        4,
                        format!("vertex {v} appears in parts {prev} and {i}"),
                    ))
                }
                Some(slot) => *slot = Some(i),
            }
        }
    }
    let assignment: Vec<usize> = assignment
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Failure::new(4, format!("vertex {v} is not in any part"))))
        .collect::<Result<_, _>>()?;
    let part =
        Partition::from_assignment(&g, file.k, assignment).expect("assignment was range-checked");
    let report: ValidityReport = verify_partition(&inst, &part);
    let text = match a.output {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Text => {
            let mut s = format!("ok={}\n", report.ok);
            for v in &report.violations {
                s.push_str(&format!("part {}: {:?} {:?}\n", v.part, v.kind, v.witness));
            }
            s
        }
    };
    deliver(&text, None, out)?;
    if report.ok {
        Ok(())
    } else {
        Err(Failure::new(
            4,
            format!("{} violation(s)", report.violations.len()),
        ))
    }
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let g = load(&a.source)?;
    if a.chromatic {
        let chi = oracle_chromatic(&g).map_err(|e| Failure::new(5, e.to_string()))?;
        let text = match a.output {
            OutputFormat::Json => to_json(&serde_json::json!({ "chromatic": chi })),
            OutputFormat::Text => format!("chromatic:{chi}\n"),
        };
        return deliver(&text, None, out);
    }
    check_k(a.k, &a.r)?;
    let inst = Instance::unchecked(g, a.r.clone(), families(a.mode, &a.r), a.mode)
        .map_err(|e| Failure::new(1, e.to_string()))?;
    let found = oracle_find_partition(&inst).map_err(|e| Failure::new(5, e.to_string()))?;
    let parts = found.map(|asg| {
        let mut parts = vec![Vec::new(); inst.k()];
        for (v, p) in asg.into_iter().enumerate() {
            parts[p].push(v);
        }
        parts
    });
    let rep = OracleReport {
        exists: parts.is_some(),
        parts,
    };
    let text = match a.output {
        OutputFormat::Json => to_json(&rep),
        OutputFormat::Text => format!("exists:{}\n", rep.exists),
    };
    deliver(&text, None, out)
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let spec: GraphSpec = a.generator.parse()?;
    let g = generate(&spec, a.seed)?;
    deliver(&emit_graph(&g, a.format), a.out.as_deref(), out)
}

/// Instances of the `smoke` bench suite.
pub const SMOKE_SUITE: &[&str] = &[
    "petersen",
    "cycle:12",
    "complete:6",
    "gnp:40,0.15",
    "regular:30,4",
    "regular:40,6",
    "trifree:50,0.2",
    "gnp:60,0.3",
];

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let suite = match a.suite.as_str() {
        "smoke" => SMOKE_SUITE,
        other => {
            return Err(Failure::new(
                1,
                format!("unknown suite {other:?}; available: smoke"),
            ))
        }
    };
    let mut csv = csv::Writer::from_writer(Vec::new());
    for spec in suite {
        let g = generate(&spec.parse::<GraphSpec>()?, a.seed)?;
        let delta = g.max_degree();
        // Two parts with caps summing to exactly Δ, the tightest allowed.
        let r = vec![delta.div_ceil(2), delta / 2];
        let inst = Instance::main(g.clone(), r).map_err(|e| engine_failure(&e))?;
        let start = Instant::now();
        let sol = solve(&inst, &solve_config(None, false)).map_err(|e| engine_failure(&e))?;
        let wall_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        if !verify_partition(&inst, &sol.partition).ok {
            return Err(Failure::new(
                4,
                format!("bench instance {spec} failed verification"),
            ));
        }
        let row = BenchRow {
            instance: spec,
            n: g.n(),
            m: g.m(),
            delta,
            k: inst.k(),
            moves: sol.stats.moves,
            chains: sol.stats.chains,
            max_chain_len: sol.stats.max_chain_len,
            wall_ms,
        };
        csv.serialize(row)
            .map_err(|e| Failure::new(1, e.to_string()))?;
    }
    let bytes = csv
        .into_inner()
        .map_err(|e| Failure::new(1, e.to_string()))?;
    deliver(
        &String::from_utf8(bytes).expect("csv output is UTF-8"),
        a.out.as_deref(),
        out,
    )
}

#[derive(Serialize)]
struct BenchRow<'a> {
    instance: &'a str,
    n: usize,
    m: usize,
    delta: usize,
    k: usize,
    moves: usize,
    chains: usize,
    max_chain_len: usize,
    wall_ms: f64,
}

//! The partition engine.
//!
//! Given degree caps `r_1..r_k` with `Σ r_i ≥ Δ(G) + 2 - k`, [`solve`] finds
//! a partition `V_1..V_k` where every `G[V_i]` has maximum degree at most
//! `r_i` and no component of `G[V_i]` belongs to the forbidden family
//! attached to part `i`.
//!
//! The search is driven by the potential
//!
//! ```text
//! f(P) = Σ_i (|E(G[V_i])| - r_i |V_i|)
//! c(P) = number of components over all parts
//! p(P) = number of components that belong to their part's family
//! ```
//!
//! Every committed change strictly lowers the potential in the order
//! `(f, p, c)`, so the search terminates. Overflowing vertices are moved to a
//! part where they have slack, which lowers `f`. A forbidden component starts
//! a chain of equal-potential moves that either finds an improvement on the
//! way or closes on itself, at which point a three-step repair from an earlier
//! snapshot lowers `f`.

mod chain;
mod partition;
mod trace;

pub use partition::Partition;
pub use trace::{EventTag, MoveEvent, MoveTrace};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::permissible::{family_for, EmptyFamily, PermissibleFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Degree caps plus forbidden components; needs `Σ r_i ≥ Δ + 2 - k`.
    Main,
    /// Degree caps only; needs `Σ r_i ≥ Δ + 1 - k`.
    Lovasz,
}

impl Mode {
    fn slack_offset(self) -> i64 {
        match self {
            Mode::Main => 2,
            Mode::Lovasz => 1,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Main => "main",
            Mode::Lovasz => "lovasz",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "main" => Ok(Mode::Main),
            "lovasz" => Ok(Mode::Lovasz),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("hypothesis not met for {mode} mode: sum of caps {sum} < {required}")]
    HypothesisNotMet { mode: Mode, sum: i64, required: i64 },
    #[error("bad instance: {0}")]
    BadInstance(String),
    #[error("vertex {vertex} has no part to escape to from part {from}")]
    NoEscape { vertex: usize, from: usize },
    #[error("move chain exceeded {cap} steps")]
    ChainOverflow { cap: usize, trace: Box<MoveTrace> },
    #[error("invariant violated: {reason}")]
    InvariantViolation {
        reason: String,
        trace: Box<MoveTrace>,
    },
}

impl EngineError {
    pub fn trace(&self) -> Option<&MoveTrace> {
        match self {
            EngineError::ChainOverflow { trace, .. }
            | EngineError::InvariantViolation { trace, .. } => Some(trace),
            _ => None,
        }
    }
}

/// A graph together with per-part caps and forbidden families.
#[derive(Clone, Debug)]
pub struct Instance {
    g: Graph,
    r: Vec<usize>,
    families: Vec<Arc<dyn PermissibleFamily>>,
    mode: Mode,
}

impl Instance {
    /// Checks the structure and the sum-of-caps hypothesis for `mode`.
    pub fn new(
        g: Graph,
        r: Vec<usize>,
        families: Vec<Arc<dyn PermissibleFamily>>,
        mode: Mode,
    ) -> Result<Self, EngineError> {
        let inst = Instance::unchecked(g, r, families, mode)?;
        let sum: i64 = inst.r.iter().map(|&x| x as i64).sum();
        let required = inst.g.max_degree() as i64 + mode.slack_offset() - inst.k() as i64;
        if sum < required {
            return Err(EngineError::HypothesisNotMet {
                mode,
                sum,
                required,
            });
        }
        Ok(inst)
    }

    /// Main mode with the shipped families (non-complete regular graphs for
    /// caps `>= 2`).
    pub fn main(g: Graph, r: Vec<usize>) -> Result<Self, EngineError> {
        let families = r.iter().map(|&ri| family_for(ri)).collect();
        Instance::new(g, r, families, Mode::Main)
    }

    pub fn lovasz(g: Graph, r: Vec<usize>) -> Result<Self, EngineError> {
        let families = r
            .iter()
            .map(|&ri| Arc::new(EmptyFamily { r: ri }) as Arc<dyn PermissibleFamily>)
            .collect();
        Instance::new(g, r, families, Mode::Lovasz)
    }

    /// Structural checks only; the hypothesis is not enforced. Meant for
    /// checking partitions that came from elsewhere, not for [`solve`].
    pub fn unchecked(
        g: Graph,
        r: Vec<usize>,
        families: Vec<Arc<dyn PermissibleFamily>>,
        mode: Mode,
    ) -> Result<Self, EngineError> {
        if r.is_empty() {
            return Err(EngineError::BadInstance("need at least one part".into()));
        }
        if families.len() != r.len() {
            return Err(EngineError::BadInstance(format!(
                "{} caps but {} families",
                r.len(),
                families.len()
            )));
        }
        for (i, (fam, &ri)) in families.iter().zip(&r).enumerate() {
            if fam.degree_target() != ri {
                return Err(EngineError::BadInstance(format!(
                    "family for part {i} targets degree {} but the cap is {ri}",
                    fam.degree_target()
                )));
            }
            if ri <= 1 && !fam.is_empty_family() {
                return Err(EngineError::BadInstance(format!(
                    "part {i} has cap {ri}; only the empty family is allowed"
                )));
            }
            if mode == Mode::Lovasz && !fam.is_empty_family() {
                return Err(EngineError::BadInstance(
                    "lovasz mode takes empty families only".into(),
                ));
            }
        }
        Ok(Instance {
            g,
            r,
            families,
            mode,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn caps(&self) -> &[usize] {
        &self.r
    }

    pub fn k(&self) -> usize {
        self.r.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn family(&self, part: usize) -> &dyn PermissibleFamily {
        self.families[part].as_ref()
    }

    pub fn families(&self) -> &[Arc<dyn PermissibleFamily>] {
        &self.families
    }
}

/// The potential `(f, c, p)`. Compared in the order `f`, then `p`, then `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Potential {
    pub f: i64,
    pub c: usize,
    pub p: usize,
}

impl Ord for Potential {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.f, self.p, self.c).cmp(&(other.f, other.p, other.c))
    }
}

impl PartialOrd for Potential {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn f_value(inst: &Instance, part: &Partition) -> i64 {
    let twice_edges: usize = (0..part.n()).map(|v| part.own_degree(v)).sum();
    let weighted: i64 = part
        .part_sizes()
        .iter()
        .zip(&inst.r)
        .map(|(&s, &r)| (s * r) as i64)
        .sum();
    (twice_edges / 2) as i64 - weighted
}

pub fn potential(inst: &Instance, part: &Partition) -> Potential {
    let comps = part.components(&inst.g);
    let p = comps
        .iter()
        .filter(|(i, comp)| {
            let fam = inst.family(*i);
            !fam.is_empty_family() && fam.contains(&inst.g, comp)
        })
        .count();
    Potential {
        f: f_value(inst, part),
        c: comps.len(),
        p,
    }
}

/// Greedy start: vertices in id order, each into the part with the most
/// remaining room `r_i - (placed neighbors in V_i)`, lowest index on ties.
pub fn initial_partition(inst: &Instance) -> Partition {
    let n = inst.g.n();
    let k = inst.k();
    let mut placed: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let mut count = vec![0i64; k];
        for &u in inst.g.neighbors(v) {
            if let Some(p) = placed[u] {
                count[p] += 1;
            }
        }
        let best = (0..k)
            .max_by_key(|&j| (inst.r[j] as i64 - count[j], std::cmp::Reverse(j)))
            .unwrap();
        placed[v] = Some(best);
    }
    Partition::from_assignment(&inst.g, k, placed.into_iter().map(Option::unwrap).collect())
        .expect("greedy assignment is total")
}

/// A part `j != from` with `d_{G[V_j]}(x) <= r_j`, taking the most slack and
/// then the lowest index.
pub fn find_escape_part(inst: &Instance, part: &Partition, x: usize, from: usize) -> Option<usize> {
    escape_candidates(inst, part, x, from)
        .max_by_key(|&(j, slack)| (slack, std::cmp::Reverse(j)))
        .map(|(j, _)| j)
}

/// Like [`find_escape_part`], but among equal slack prefers parts with cap
/// at least 1.
pub(crate) fn find_chain_escape_part(
    inst: &Instance,
    part: &Partition,
    x: usize,
    from: usize,
) -> Option<usize> {
    escape_candidates(inst, part, x, from)
        .max_by_key(|&(j, slack)| (slack, inst.r[j] >= 1, std::cmp::Reverse(j)))
        .map(|(j, _)| j)
}

fn escape_candidates<'a>(
    inst: &'a Instance,
    part: &'a Partition,
    x: usize,
    from: usize,
) -> impl Iterator<Item = (usize, i64)> + 'a {
    (0..inst.k())
        .filter(move |&j| j != from)
        .map(move |j| (j, inst.r[j] as i64 - part.degree_to(x, j) as i64))
        .filter(|&(_, slack)| slack >= 0)
}

/// Whether `part` has a component in its part's family; lowest part first,
/// then lowest minimum vertex.
pub fn find_bad_component(inst: &Instance, part: &Partition) -> Option<(usize, VertexSet)> {
    part.components(&inst.g).into_iter().find(|(i, comp)| {
        let fam = inst.family(*i);
        !fam.is_empty_family() && fam.contains(&inst.g, comp)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Steps allowed in one chain; `None` means `10 * n * k`.
    pub chain_cap: Option<usize>,
    /// Record every move in the returned [`MoveTrace`].
    pub trace: bool,
    /// Recount the degree cache after every move.
    pub check_cache: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            chain_cap: None,
            trace: true,
            check_cache: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub moves: usize,
    pub commits: usize,
    pub chains: usize,
    pub max_chain_len: usize,
    pub repairs: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub partition: Partition,
    pub trace: MoveTrace,
    pub stats: SolveStats,
}

/// Mutable state of one solve run.
pub(crate) struct Run<'a> {
    pub inst: &'a Instance,
    pub part: Partition,
    pub trace: MoveTrace,
    pub stats: SolveStats,
    pub config: &'a SolveConfig,
}

impl<'a> Run<'a> {
    pub fn new(inst: &'a Instance, part: Partition, config: &'a SolveConfig) -> Self {
        let mut trace = MoveTrace::default();
        if config.trace {
            trace.initial = Some(potential(inst, &part));
        }
        Run {
            inst,
            part,
            trace,
            stats: SolveStats::default(),
            config,
        }
    }

    pub fn potential(&self) -> Potential {
        potential(self.inst, &self.part)
    }

    /// Moves `v` and returns the part it left.
    pub fn shift(&mut self, v: usize, to: usize) -> Result<usize, EngineError> {
        let from = self.part.part_of(v);
        self.part.move_vertex(&self.inst.g, v, to);
        self.stats.moves += 1;
        if self.config.check_cache && !self.part.cache_is_consistent(&self.inst.g) {
            return Err(self.violation(format!("degree cache out of date after moving {v}")));
        }
        Ok(from)
    }

    pub fn record(
        &mut self,
        tag: EventTag,
        vertex: usize,
        from: usize,
        to: usize,
        pot: Option<Potential>,
        commit: bool,
    ) {
        if commit {
            self.stats.commits += 1;
        }
        if self.config.trace {
            let potential = pot.unwrap_or_else(|| self.potential());
            self.trace.events.push(MoveEvent {
                tag,
                vertex,
                from,
                to,
                potential,
                commit,
            });
        }
    }

    pub fn violation(&self, reason: String) -> EngineError {
        EngineError::InvariantViolation {
            reason,
            trace: Box::new(self.trace.clone()),
        }
    }

    /// Moves overflowing vertices (lowest id first) until every vertex is
    /// within its part's cap. Each move lowers `f`.
    pub fn reduce_overflow(&mut self) -> Result<(), EngineError> {
        let inst = self.inst;
        let over = |part: &Partition, v: usize| part.own_degree(v) > inst.r[part.part_of(v)];
        let mut pending: BTreeSet<usize> =
            (0..inst.g.n()).filter(|&v| over(&self.part, v)).collect();
        while let Some(v) = pending.pop_first() {
            let from = self.part.part_of(v);
            let to = find_escape_part(inst, &self.part, v, from)
                .ok_or(EngineError::NoEscape { vertex: v, from })?;
            self.shift(v, to)?;
            self.record(EventTag::Overflow, v, from, to, None, true);
            for &u in inst.g.neighbors(v) {
                if over(&self.part, u) {
                    pending.insert(u);
                } else {
                    pending.remove(&u);
                }
            }
        }
        Ok(())
    }
}

/// Runs overflow reduction on `part` in place.
pub fn reduce_overflow(
    inst: &Instance,
    part: Partition,
    trace: bool,
) -> Result<(Partition, MoveTrace), EngineError> {
    let config = SolveConfig {
        trace,
        ..SolveConfig::default()
    };
    let mut run = Run::new(inst, part, &config);
    run.reduce_overflow()?;
    Ok((run.part, run.trace))
}

/// Runs one chain repair from the bad component `start`. On success the
/// returned partition has strictly smaller potential than `part`.
pub fn chain_repair(
    inst: &Instance,
    part: Partition,
    start: (usize, VertexSet),
    config: &SolveConfig,
) -> Result<Solution, EngineError> {
    let mut run = Run::new(inst, part, config);
    chain::repair(&mut run, start)?;
    Ok(Solution {
        partition: run.part,
        trace: run.trace,
        stats: run.stats,
    })
}

/// Finds a valid partition for `inst`.
///
/// Lovász mode stops once every degree cap holds. Main mode additionally
/// repairs forbidden components until none is left.
pub fn solve(inst: &Instance, config: &SolveConfig) -> Result<Solution, EngineError> {
    let mut run = Run::new(inst, initial_partition(inst), config);
    loop {
        run.reduce_overflow()?;
        if inst.mode == Mode::Lovasz {
            break;
        }
        match find_bad_component(inst, &run.part) {
            None => break,
            Some(start) => chain::repair(&mut run, start)?,
        }
    }
    Ok(Solution {
        partition: run.part,
        trace: run.trace,
        stats: run.stats,
    })
}

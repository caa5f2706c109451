//! Validity checks and brute-force oracles.
//!
//! Nothing here goes through the engine's degree cache or the graph module's
//! traversal helpers: degrees are recounted from the edge list and components
//! come from a union-find, so a bug in the engine cannot hide itself.

use serde::Serialize;
use thiserror::Error;

use crate::engine::{Instance, Mode, Partition};
use crate::graph::{Graph, VertexSet};
use crate::permissible::FamilyKind;

/// Largest `k^n` [`oracle_partition_exists`] will enumerate.
pub const MAX_ASSIGNMENTS: u64 = 2_000_000;
/// Largest graph [`oracle_chromatic`] accepts.
pub const MAX_CHROMATIC_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("size guard exceeded: {what} (limit {limit})")]
pub struct SizeGuardExceeded {
    pub what: String,
    pub limit: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DegreeCap,
    ForbiddenComponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Vertex(usize),
    Set(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub part: usize,
    pub kind: ViolationKind,
    pub witness: Witness,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, v: usize) -> usize {
        let mut root = v;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = v;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Own-part degree of every vertex, counted from the edge list.
fn own_degrees(g: &Graph, assignment: &[usize]) -> Vec<usize> {
    let mut deg = vec![0; g.n()];
    for (u, v) in g.edges() {
        if assignment[u] == assignment[v] {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    deg
}

/// Components of all parts as `(part, sorted vertices)`, ordered by part then
/// minimum vertex.
fn part_components(g: &Graph, assignment: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut dsu = Dsu::new(g.n());
    for (u, v) in g.edges() {
        if assignment[u] == assignment[v] {
            dsu.union(u, v);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for v in 0..g.n() {
        let root = dsu.find(v);
        groups[root].push(v);
    }
    let mut out: Vec<(usize, Vec<usize>)> = groups
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| (assignment[c[0]], c))
        .collect();
    out.sort_by_key(|(p, c)| (*p, c[0]));
    out
}

fn is_forbidden(inst: &Instance, part: usize, comp: &[usize], deg: &[usize]) -> bool {
    let fam = inst.family(part);
    match fam.kind() {
        FamilyKind::Empty => false,
        FamilyKind::NonCompleteRegular => {
            // A connected r-regular graph on r + 1 vertices is K_{r+1}.
            let r = fam.degree_target();
            comp.len() > r + 1 && comp.iter().all(|&v| deg[v] == r)
        }
        FamilyKind::Custom => fam.contains(inst.graph(), &VertexSet::from(comp.to_vec())),
    }
}

fn check_assignment(inst: &Instance, assignment: &[usize], stop_early: bool) -> ValidityReport {
    let g = inst.graph();
    let deg = own_degrees(g, assignment);
    let mut violations = Vec::new();
    for v in 0..g.n() {
        let part = assignment[v];
        if deg[v] > inst.caps()[part] {
            violations.push(Violation {
                part,
                kind: ViolationKind::DegreeCap,
                witness: Witness::Vertex(v),
            });
            if stop_early {
                return ValidityReport {
                    ok: false,
                    violations,
                };
            }
        }
    }
    if inst.mode() == Mode::Main {
        for (part, comp) in part_components(g, assignment) {
            if is_forbidden(inst, part, &comp, &deg) {
                violations.push(Violation {
                    part,
                    kind: ViolationKind::ForbiddenComponent,
                    witness: Witness::Set(comp),
                });
                if stop_early {
                    break;
                }
            }
        }
    }
    ValidityReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Recomputes caps and forbidden components from scratch. Lovász mode only
/// checks caps.
pub fn verify_partition(inst: &Instance, part: &Partition) -> ValidityReport {
    assert_eq!(
        part.n(),
        inst.graph().n(),
        "partition and graph sizes differ"
    );
    check_assignment(inst, part.assignment(), false)
}

/// True when `colors` assigns every vertex and no edge is monochromatic.
pub fn verify_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

/// Enumerates all `k^n` assignments and returns the first valid one.
///
/// When every part has the same cap and family kind, vertex 0 is pinned to
/// part 0.
pub fn oracle_find_partition(inst: &Instance) -> Result<Option<Vec<usize>>, SizeGuardExceeded> {
    let n = inst.graph().n();
    let k = inst.k();
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_ASSIGNMENTS);
    if total.is_none() {
        return Err(SizeGuardExceeded {
            what: format!("{k}^{n} assignments"),
            limit: MAX_ASSIGNMENTS,
        });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let symmetric = (1..k).all(|j| {
        inst.caps()[j] == inst.caps()[0]
            && inst.family(j).kind() == inst.family(0).kind()
            && inst.family(0).kind() != FamilyKind::Custom
    });
    let free_from = usize::from(symmetric);
    let mut a = vec![0usize; n];
    loop {
        if check_assignment(inst, &a, true).ok {
            return Ok(Some(a));
        }
        // Odometer over positions free_from..n.
        let mut pos = n;
        loop {
            if pos == free_from {
                return Ok(None);
            }
            pos -= 1;
            a[pos] += 1;
            if a[pos] < k {
                break;
            }
            a[pos] = 0;
        }
    }
}

pub fn oracle_partition_exists(inst: &Instance) -> Result<bool, SizeGuardExceeded> {
    oracle_find_partition(inst).map(|a| a.is_some())
}

/// Chromatic number by backtracking over increasing palette sizes.
pub fn oracle_chromatic(g: &Graph) -> Result<usize, SizeGuardExceeded> {
    let n = g.n();
    if n > MAX_CHROMATIC_N {
        return Err(SizeGuardExceeded {
            what: format!("chromatic number on {n} vertices"),
            limit: MAX_CHROMATIC_N as u64,
        });
    }

    fn extend(g: &Graph, colors: &mut Vec<usize>, palette: usize) -> bool {
        let v = colors.len();
        if v == g.n() {
            return true;
        }
        // Colors beyond max-used + 1 are symmetric.
        let limit = colors.iter().max().map_or(1, |&m| m + 2).min(palette);
        for c in 0..limit {
            let clash = (0..v).any(|u| colors[u] == c && g.has_edge(u, v));
            if !clash {
                colors.push(c);
                if extend(g, colors, palette) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }

    if n == 0 {
        return Ok(0);
    }
    Ok((1..=n)
        .find(|&c| extend(g, &mut Vec::with_capacity(n), c))
        .expect("n colors always suffice"))
}

//! Chains of equal-potential moves that eliminate a forbidden component.
//!
//! Starting from a forbidden component `A_1` of part `i_1`, each step removes
//! a top-degree, non-cut vertex `x_j` of `A_j` (not adjacent to `x_{j-1}`)
//! and sends it to a part where it has degree at most that part's cap. If the
//! move does not lower the potential, `x_j` has landed with exactly `r`
//! neighbors in a single component `C`, and `A_{j+1} = C ∪ {x_j}` is again
//! forbidden. The chain continues from there.
//!
//! When some `C_{t+1}` equals an earlier remainder `B = A_s - x_s` in the same
//! part, the partition is rolled back to just before step `s` and repaired:
//! the chain vertices that sat in part `i_s` at that time are moved out, `x_t`
//! is moved into part `i_s`, and a common neighbor `z` of `x_t` and `x_s` in
//! `B` is pushed over its cap and moved out, which lowers `f`.

use std::collections::HashMap;

use super::{
    find_chain_escape_part, find_escape_part, EngineError, EventTag, Partition, Potential, Run,
};
use crate::graph::{induced_components, VertexSet};

struct Step {
    part: usize,
    comp: VertexSet,
    x: usize,
    before: Partition,
}

pub(super) fn repair(run: &mut Run<'_>, start: (usize, VertexSet)) -> Result<(), EngineError> {
    let inst = run.inst;
    let g = inst.graph();
    let cap = run.config.chain_cap.unwrap_or(10 * g.n() * inst.k()).max(1);
    let entry = run.potential();
    run.stats.chains += 1;

    let mut steps: Vec<Step> = Vec::new();
    // (part, A_s - x_s) -> s
    let mut seen: HashMap<(usize, VertexSet), usize> = HashMap::new();
    let (mut part, mut comp) = start;
    let mut prev: Option<usize> = None;

    loop {
        if steps.len() >= cap {
            return Err(EngineError::ChainOverflow {
                cap,
                trace: Box::new(run.trace.clone()),
            });
        }
        let fam = inst.family(part);
        let r = inst.caps()[part];
        if fam.is_empty_family() || !fam.contains(g, &comp) {
            return Err(run.violation(format!(
                "chain component {:?} of part {part} is not forbidden",
                comp.as_slice()
            )));
        }
        let x = fam
            .pick_removable(g, &comp, prev)
            .map_err(|e| run.violation(e.to_string()))?;
        let rest = comp.without(x);
        let removable = comp.contains(x)
            && run.part.degree_to(x, part) == r
            && prev.is_none_or(|p| p != x && !g.has_edge(p, x))
            && induced_components(g, &rest).len() == 1;
        if !removable {
            return Err(run.violation(format!("family returned an unusable removable vertex {x}")));
        }

        let before = run.part.clone();
        seen.entry((part, rest)).or_insert(steps.len());
        let to = find_chain_escape_part(inst, &run.part, x, part).ok_or(EngineError::NoEscape {
            vertex: x,
            from: part,
        })?;
        run.shift(x, to)?;
        steps.push(Step {
            part,
            comp,
            x,
            before,
        });
        run.stats.max_chain_len = run.stats.max_chain_len.max(steps.len());

        let now = run.potential();
        if now < entry {
            run.record(EventTag::ChainCommit, x, part, to, Some(now), true);
            return Ok(());
        }
        if now > entry {
            return Err(run.violation(format!("moving chain vertex {x} raised the potential")));
        }
        run.record(EventTag::ChainStep, x, part, to, Some(now), false);

        let grown = run.part.component_of(g, x);
        if !inst.family(to).contains(g, &grown) {
            return Err(run.violation(format!(
                "equal-potential move of {x} did not form a forbidden component"
            )));
        }
        let landed = grown.without(x);
        if let Some(&s) = seen.get(&(to, landed)) {
            return close(run, &steps, s, entry);
        }
        prev = Some(x);
        part = to;
        comp = grown;
    }
}

/// Rolls back to the snapshot before step `s` and performs the repair that
/// lowers `f`. `steps.last()` is step `t`.
fn close(run: &mut Run<'_>, steps: &[Step], s: usize, entry: Potential) -> Result<(), EngineError> {
    let inst = run.inst;
    let g = inst.graph();
    let t = steps.len() - 1;
    let home = steps[s].part;
    let r_home = inst.caps()[home];
    let x_s = steps[s].x;
    let x_t = steps[t].x;
    let b = steps[s].comp.without(x_s);
    run.stats.repairs += 1;

    let x_s_now = run.part.part_of(x_s);
    run.part = steps[s].before.clone();
    run.record(EventTag::Rollback, x_s, x_s_now, home, None, false);

    let movers: VertexSet = steps[s + 1..t]
        .iter()
        .map(|st| st.x)
        .filter(|&v| run.part.part_of(v) == home)
        .collect();
    for (i, &u) in movers.iter().enumerate() {
        if let Some(&v) = movers.as_slice()[i + 1..]
            .iter()
            .find(|&&v| g.has_edge(u, v))
        {
            return Err(run.violation(format!("repair set contains the edge {u}-{v}")));
        }
    }

    for &v in movers.iter() {
        if run.part.degree_to(v, home) < r_home {
            return Err(run.violation(format!(
                "repair vertex {v} has fewer than {r_home} neighbors in part {home}"
            )));
        }
        let to = find_escape_part(inst, &run.part, v, home).ok_or(EngineError::NoEscape {
            vertex: v,
            from: home,
        })?;
        run.shift(v, to)?;
        let now = run.potential();
        if now < entry {
            run.record(EventTag::RepairX, v, home, to, Some(now), true);
            return Ok(());
        }
        run.record(EventTag::RepairX, v, home, to, Some(now), false);
    }

    let cur = run.part.part_of(x_t);
    if cur == home {
        return Err(run.violation(format!("closing vertex {x_t} already sits in part {home}")));
    }
    if run.part.degree_to(x_t, cur) < inst.caps()[cur] {
        return Err(run.violation(format!(
            "closing vertex {x_t} has slack in its own part {cur}"
        )));
    }
    run.shift(x_t, home)?;
    run.record(EventTag::RepairXt, x_t, cur, home, None, false);

    let z = inst
        .family(home)
        .find_common_witness(g, &b, x_t, x_s)
        .map_err(|e| run.violation(e.to_string()))?;
    if run.part.part_of(z) != home || run.part.degree_to(z, home) <= r_home {
        return Err(run.violation(format!("witness {z} is not over its cap in part {home}")));
    }
    let to = find_escape_part(inst, &run.part, z, home).ok_or(EngineError::NoEscape {
        vertex: z,
        from: home,
    })?;
    run.shift(z, to)?;
    let now = run.potential();
    if now.f >= entry.f {
        return Err(run.violation(format!(
            "repair ended at f = {} but started at f = {}",
            now.f, entry.f
        )));
    }
    run.record(EventTag::RepairZ, z, home, to, Some(now), true);
    Ok(())
}

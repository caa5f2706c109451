//! Proper colorings built from capped partitions.
//!
//! A plan fixes the caps and a color budget per part. The driver solves the
//! partition problem for the plan, colors each part on its own palette, and
//! reports how many colors were used against the plan's claimed total.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{solve, EngineError, Instance, Partition, SolveConfig};
use crate::graph::{
    degeneracy_order, has_clique, induced_components, is_complete, Graph, GraphError, VertexSet,
};
use crate::verify::verify_coloring;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("graph contains a clique on {size} vertices")]
    NotCliqueFree { size: usize },
    #[error("graph contains a triangle")]
    NotTriangleFree,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("coloring used {used} colors but the bound is {bound}")]
    BoundExceeded { used: usize, bound: usize },
    #[error("part {part} has a complete component larger than its budget")]
    UnexpectedCompleteComponent { part: usize },
    #[error("produced coloring is not proper")]
    NotProper,
}

/// Caps and color budgets for each part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringPlan {
    pub k: usize,
    pub r: Vec<usize>,
    pub color_budget: Vec<usize>,
    pub claimed_total: usize,
}

impl ColoringPlan {
    /// Checks `Σ r_i ≥ delta + 2 − k` and that both lists have length `k`.
    pub fn new(
        delta: usize,
        r: Vec<usize>,
        color_budget: Vec<usize>,
    ) -> Result<Self, ColoringError> {
        let k = r.len();
        if k == 0 || color_budget.len() != k {
            return Err(ColoringError::BadParameter(format!(
                "plan needs k >= 1 caps and one budget per part, got {} caps and {} budgets",
                k,
                color_budget.len()
            )));
        }
        let sum: usize = r.iter().sum();
        if sum + k < delta + 2 {
            return Err(ColoringError::BadParameter(format!(
                "caps sum to {sum}, need at least {}",
                (delta + 2).saturating_sub(k)
            )));
        }
        let claimed_total = color_budget.iter().sum();
        Ok(ColoringPlan {
            k,
            r,
            color_budget,
            claimed_total,
        })
    }
}

/// `ceil((delta + 2) / 3)` parts with cap 2 and budget 3. When `economical`
/// and `delta ≡ 2 (mod 3)`, the last part gets cap 0 and budget 1.
pub fn kostochka_plan(delta: usize, economical: bool) -> ColoringPlan {
    kostochka_with_budget(delta, economical, 3)
}

fn kostochka_with_budget(delta: usize, economical: bool, budget: usize) -> ColoringPlan {
    let k = (delta + 2).div_ceil(3);
    let mut r = vec![2; k];
    let mut color_budget = vec![budget; k];
    if economical && delta % 3 == 2 {
        r[k - 1] = 0;
        color_budget[k - 1] = 1;
    }
    ColoringPlan::new(delta, r, color_budget).expect("kostochka plan satisfies the cap sum")
}

/// Parts of cap `r` and budget `r`. Plain: `ceil((delta + 2) / (r + 1))` of
/// them. Economical: `q = floor((delta + 2) / (r + 1))` of them plus
/// `delta + 2 − (r + 1) q` independent sets.
pub fn clique_free_plan(
    delta: usize,
    r: usize,
    economical: bool,
) -> Result<ColoringPlan, ColoringError> {
    if r < 2 {
        return Err(ColoringError::BadParameter(format!(
            "clique-free plan needs r >= 2, got {r}"
        )));
    }
    let (caps, budgets) = if economical {
        let q = (delta + 2) / (r + 1);
        let rest = delta + 2 - (r + 1) * q;
        let caps: Vec<usize> = std::iter::repeat_n(r, q)
            .chain(std::iter::repeat_n(0, rest))
            .collect();
        let budgets = caps.iter().map(|&c| if c == 0 { 1 } else { r }).collect();
        (caps, budgets)
    } else {
        let k = (delta + 2).div_ceil(r + 1);
        (vec![r; k], vec![r; k])
    };
    ColoringPlan::new(delta, caps, budgets)
}

/// Coloring of one part with local colors `0..used`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartColoring {
    pub colors: BTreeMap<usize, usize>,
    pub used: usize,
    /// Complete components that needed more colors than the budget.
    pub flagged: Vec<VertexSet>,
}

/// Colors `G[part]`. Complete components larger than `budget` get one color
/// per vertex and are flagged; every other component is colored greedily in
/// reverse degeneracy order.
pub fn color_part(g: &Graph, part: &VertexSet, budget: usize) -> PartColoring {
    let mut colors = BTreeMap::new();
    let mut flagged = Vec::new();
    for comp in induced_components(g, part) {
        if comp.len() > budget && is_complete(g, &comp) {
            for (c, &v) in comp.iter().enumerate() {
                colors.insert(v, c);
            }
            flagged.push(comp);
            continue;
        }
        for &v in degeneracy_order(g, &comp).order.iter().rev() {
            let taken: Vec<usize> = g
                .neighbors(v)
                .iter()
                .filter_map(|u| colors.get(u).copied())
                .collect();
            let c = (0..)
                .find(|c| !taken.contains(c))
                .expect("some color is free");
            colors.insert(v, c);
        }
    }
    let used = colors.values().max().map_or(0, |&c| c + 1);
    PartColoring {
        colors,
        used,
        flagged,
    }
}

/// A proper coloring of a whole graph built from a plan.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub used: usize,
    pub bound: usize,
    pub plan: ColoringPlan,
    pub partition: Partition,
}

/// Solves the partition problem for `plan` and colors each part on its own
/// palette, with palettes packed one after another.
pub fn color_with_plan(
    g: &Graph,
    plan: &ColoringPlan,
    config: &SolveConfig,
) -> Result<Coloring, ColoringError> {
    let inst = Instance::main(g.clone(), plan.r.clone())?;
    let sol = solve(&inst, config)?;
    let mut colors = vec![0; g.n()];
    let mut offset = 0;
    for (i, members) in sol.partition.parts().iter().enumerate() {
        let pc = color_part(g, members, plan.color_budget[i]);
        if !pc.flagged.is_empty() {
            return Err(ColoringError::UnexpectedCompleteComponent { part: i });
        }
        for (&v, &c) in &pc.colors {
            colors[v] = offset + c;
        }
        offset += pc.used;
    }
    if !verify_coloring(g, &colors) {
        return Err(ColoringError::NotProper);
    }
    Ok(Coloring {
        colors,
        used: offset,
        bound: plan.claimed_total,
        plan: plan.clone(),
        partition: sol.partition,
    })
}

/// Colors a `K_{r+1}`-free graph with at most
/// `Δ + 2 − floor((Δ + 2) / (r + 1))` colors.
pub fn chromatic_upper(g: &Graph, r: usize) -> Result<Coloring, ColoringError> {
    chromatic_upper_with(g, r, true, &SolveConfig::default())
}

/// [`chromatic_upper`] with a choice of plan. Without `economical` the bound
/// is `r * ceil((Δ + 2) / (r + 1))`.
pub fn chromatic_upper_with(
    g: &Graph,
    r: usize,
    economical: bool,
    config: &SolveConfig,
) -> Result<Coloring, ColoringError> {
    if r < 2 {
        return Err(ColoringError::BadParameter(format!(
            "r must be at least 2, got {r}"
        )));
    }
    if has_clique(g, r + 1)? {
        return Err(ColoringError::NotCliqueFree { size: r + 1 });
    }
    let plan = clique_free_plan(g.max_degree(), r, economical)?;
    within_budget(color_with_plan(g, &plan, config)?)
}

/// Colors a triangle-free graph with at most `floor(2(Δ + 3) / 3)` colors
/// when `Δ ≡ 2 (mod 3)` and `2 ceil((Δ + 2) / 3)` otherwise.
pub fn triangle_free_color(g: &Graph) -> Result<Coloring, ColoringError> {
    triangle_free_color_with(g, true, &SolveConfig::default())
}

/// [`triangle_free_color`] with a choice of plan. `economical` only matters
/// when `Δ ≡ 2 (mod 3)`.
pub fn triangle_free_color_with(
    g: &Graph,
    economical: bool,
    config: &SolveConfig,
) -> Result<Coloring, ColoringError> {
    if has_clique(g, 3)? {
        return Err(ColoringError::NotTriangleFree);
    }
    let plan = kostochka_with_budget(g.max_degree(), economical, 2);
    within_budget(color_with_plan(g, &plan, config)?)
}

fn within_budget(coloring: Coloring) -> Result<Coloring, ColoringError> {
    if coloring.used > coloring.bound {
        return Err(ColoringError::BoundExceeded {
            used: coloring.used,
            bound: coloring.bound,
        });
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphSpec};
    use crate::verify::oracle_chromatic;

    fn gen(spec: GraphSpec) -> Graph {
        generate(&spec, 0).unwrap()
    }

    #[test]
    fn kostochka_plan_examples() {
        let p = kostochka_plan(3, true);
        assert_eq!((p.k, p.r.clone()), (2, vec![2, 2]));
        let p = kostochka_plan(2, true);
        assert_eq!(
            (p.k, p.r.clone(), p.color_budget.clone()),
            (2, vec![2, 0], vec![3, 1])
        );
        assert_eq!(kostochka_with_budget(2, true, 2).claimed_total, 3);
        let p = kostochka_plan(0, true);
        assert_eq!((p.k, p.r.clone()), (1, vec![2]));
        assert_eq!(kostochka_plan(2, false).r, vec![2, 2]);
    }

    #[test]
    fn clique_free_plan_examples() {
        let p = clique_free_plan(7, 3, true).unwrap();
        assert_eq!(p.r, vec![3, 3, 0]);
        assert_eq!(p.claimed_total, 7);
        let p = clique_free_plan(4, 2, true).unwrap();
        assert_eq!(p.r, vec![2, 2]);
        assert_eq!(p.claimed_total, 4);
        let p = clique_free_plan(1, 2, false).unwrap();
        assert_eq!((p.k, p.r.clone()), (1, vec![2]));
        assert!(matches!(
            clique_free_plan(5, 1, true),
            Err(ColoringError::BadParameter(_))
        ));
    }

    #[test]
    fn plans_satisfy_the_cap_sum_everywhere() {
        for delta in 0..40 {
            for econ in [false, true] {
                let p = kostochka_plan(delta, econ);
                assert!(p.r.iter().sum::<usize>() + p.k >= delta + 2);
                for r in 2..6 {
                    let p = clique_free_plan(delta, r, econ).unwrap();
                    assert!(p.r.iter().sum::<usize>() + p.k >= delta + 2);
                    if econ {
                        assert_eq!(p.claimed_total, delta + 2 - (delta + 2) / (r + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn color_part_examples() {
        let p5 = gen(GraphSpec::Path(5));
        let pc = color_part(&p5, &p5.vertices(), 2);
        assert_eq!(pc.used, 2);
        assert!(pc.flagged.is_empty());

        let k3 = gen(GraphSpec::Complete(3));
        let pc = color_part(&k3, &k3.vertices(), 2);
        assert_eq!(pc.used, 3);
        assert_eq!(pc.flagged, vec![k3.vertices()]);

        // Two triangles sharing an edge plus a pendant: 2-degenerate, max degree 3.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (1, 3), (2, 3), (3, 4)]);
        let pc = color_part(&g, &g.vertices(), 3);
        assert!(pc.used <= 3);
        let colors: Vec<usize> = (0..5).map(|v| pc.colors[&v]).collect();
        assert!(verify_coloring(&g, &colors));
    }

    #[test]
    fn chromatic_upper_examples() {
        let pet = gen(GraphSpec::Petersen);
        let c = chromatic_upper(&pet, 2).unwrap();
        assert!(c.used <= 4 && c.bound == 4);
        assert!(verify_coloring(&pet, &c.colors));
        assert!(oracle_chromatic(&pet).unwrap() <= c.used);

        let c5 = gen(GraphSpec::Cycle(5));
        let c = chromatic_upper(&c5, 2).unwrap();
        assert_eq!(c.bound, 3);
        assert_eq!(c.used, 3);

        let c = chromatic_upper_with(&c5, 2, false, &SolveConfig::default()).unwrap();
        assert_eq!(c.bound, 4);

        let k4 = gen(GraphSpec::Complete(4));
        assert!(matches!(
            chromatic_upper(&k4, 2),
            Err(ColoringError::NotCliqueFree { size: 3 })
        ));
    }

    #[test]
    fn triangle_free_examples() {
        let pet = gen(GraphSpec::Petersen);
        let c = triangle_free_color(&pet).unwrap();
        assert!(c.used <= 4);
        assert_eq!(c.bound, 4);
        assert!(verify_coloring(&pet, &c.colors));

        let c = triangle_free_color_with(&pet, false, &SolveConfig::default()).unwrap();
        assert_eq!(c.bound, 4);

        let c5 = gen(GraphSpec::Cycle(5));
        assert_eq!(
            triangle_free_color_with(&c5, false, &SolveConfig::default())
                .unwrap()
                .bound,
            4
        );
        let c = triangle_free_color(&c5).unwrap();
        assert_eq!(c.bound, 3);
        assert!(c.used <= 3);
        assert_eq!(c.plan.r, vec![2, 0]);

        let e = Graph::empty(4);
        assert_eq!(triangle_free_color(&e).unwrap().used, 1);

        let k4 = gen(GraphSpec::Complete(4));
        assert!(matches!(
            triangle_free_color(&k4),
            Err(ColoringError::NotTriangleFree)
        ));
    }
}

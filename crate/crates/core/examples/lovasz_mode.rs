//! Degree caps only: with k = Δ + 1 parts of cap 0 the result is a proper
//! coloring.

use defective_partition::engine::{solve, Instance, SolveConfig};
use defective_partition::graph::{generate, GraphSpec};
use defective_partition::verify::verify_coloring;

fn main() {
    let g = generate(&GraphSpec::Gnp { n: 30, p: 0.2 }, 5).expect("generate");
    let delta = g.max_degree();

    // Σ r = Δ + 1 − k with k = 2.
    let r = vec![(delta - 1) / 2, delta - 1 - (delta - 1) / 2];
    let inst = Instance::lovasz(g.clone(), r.clone()).expect("caps meet the weaker hypothesis");
    let sol = solve(&inst, &SolveConfig::default()).expect("solve");
    let worst: Vec<usize> = (0..2)
        .map(|i| {
            (0..g.n())
                .filter(|&v| sol.partition.part_of(v) == i)
                .map(|v| sol.partition.own_degree(v))
                .max()
                .unwrap_or(0)
        })
        .collect();
    println!("Δ={delta} caps {r:?}: largest inner degree per part {worst:?}");

    let inst = Instance::lovasz(g.clone(), vec![0; delta + 1]).unwrap();
    let sol = solve(&inst, &SolveConfig::default()).expect("solve");
    println!(
        "{} zero-cap parts give a proper coloring: {}",
        delta + 1,
        verify_coloring(&g, sol.partition.assignment())
    );
}

//! Cross-check the engine against brute force on small graphs.

use defective_partition::coloring::chromatic_upper;
use defective_partition::engine::{solve, Instance, SolveConfig};
use defective_partition::graph::{generate, GraphSpec};
use defective_partition::verify::{oracle_chromatic, oracle_partition_exists, verify_partition};

fn main() {
    for spec in [
        GraphSpec::Petersen,
        GraphSpec::Cycle(5),
        GraphSpec::Cycle(7),
    ] {
        let g = generate(&spec, 0).unwrap();
        let chi = oracle_chromatic(&g).unwrap();
        let upper = chromatic_upper(&g, 2).unwrap().used;
        println!("{spec}: chromatic number {chi}, engine coloring uses {upper}");
    }

    let g = generate(&GraphSpec::Gnp { n: 7, p: 0.6 }, 3).unwrap();
    let delta = g.max_degree();
    let r = vec![delta.div_ceil(2), delta / 2];
    let inst = Instance::main(g, r.clone()).unwrap();
    let sol = solve(&inst, &SolveConfig::default()).unwrap();
    println!(
        "gnp:7,0.6 Δ={delta} r={r:?}: engine valid {}, oracle finds one {}",
        verify_partition(&inst, &sol.partition).ok,
        oracle_partition_exists(&inst).unwrap()
    );
}

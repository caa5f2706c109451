//! Color a K_4-free graph with at most Δ + 2 − ⌊(Δ + 2)/4⌋ colors.

use defective_partition::coloring::{chromatic_upper, clique_free_plan};
use defective_partition::graph::{generate, has_clique, GraphSpec};

fn main() {
    // A random 6-regular graph; reseed until it has no K_4.
    let g = (0..)
        .map(|seed| generate(&GraphSpec::RandomRegular { n: 40, r: 6 }, seed).expect("generate"))
        .find(|g| !has_clique(g, 4).unwrap())
        .unwrap();
    let delta = g.max_degree();
    let plan = clique_free_plan(delta, 3, true).unwrap();
    println!(
        "economical plan for Δ={delta}, r=3: caps {:?}, total {}",
        plan.r, plan.claimed_total
    );

    let c = chromatic_upper(&g, 3).expect("graph is K_4-free");
    println!("colors used: {} (bound {})", c.used, c.bound);
}

//! Color a random triangle-free graph from a partition into path forests.

use defective_partition::coloring::triangle_free_color;
use defective_partition::graph::{generate, GraphSpec};
use defective_partition::verify::verify_coloring;

fn main() {
    let g = generate(&GraphSpec::TriangleFreeGnp { n: 60, p: 0.25 }, 11).expect("generate");
    let delta = g.max_degree();
    let c = triangle_free_color(&g).expect("graph is triangle-free");
    println!("n={} m={} max degree={delta}", g.n(), g.m());
    println!(
        "plan: caps {:?}, budgets {:?}",
        c.plan.r, c.plan.color_budget
    );
    println!("colors used: {} (bound {})", c.used, c.bound);
    println!("proper: {}", verify_coloring(&g, &c.colors));
}

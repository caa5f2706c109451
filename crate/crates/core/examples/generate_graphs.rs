//! Seeded generators and their DIMACS output.

use defective_partition::graph::{emit_graph, generate, Format, GraphSpec};

fn main() {
    for spec in [
        "gnp:12,0.3",
        "regular:10,3",
        "trifree:12,0.5",
        "cycle:6",
        "petersen",
    ] {
        let spec: GraphSpec = spec.parse().unwrap();
        let g = generate(&spec, 7).unwrap();
        println!(
            "{spec}: n={} m={} max degree={}",
            g.n(),
            g.m(),
            g.max_degree()
        );
    }
    let g = generate(&"gnp:6,0.5".parse().unwrap(), 1).unwrap();
    print!("{}", emit_graph(&g, Format::Dimacs));
}

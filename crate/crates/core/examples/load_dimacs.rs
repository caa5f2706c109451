//! Read a DIMACS graph, partition it, and write it back as an edge list.

use defective_partition::engine::{solve, Instance, SolveConfig};
use defective_partition::graph::{emit_graph, load_graph, Format};

const MYCIELSKI_3: &str = "\
c Grötzsch graph
p edge 11 20
e 1 2
e 1 4
e 1 7
e 1 9
e 2 3
e 2 6
e 2 8
e 3 5
e 3 7
e 3 10
e 4 5
e 4 6
e 4 10
e 5 8
e 5 9
e 6 11
e 7 11
e 8 11
e 9 11
e 10 11
";

fn main() {
    let g = load_graph(MYCIELSKI_3, Format::Dimacs).expect("valid DIMACS");
    println!(
        "loaded n={} m={} max degree={}",
        g.n(),
        g.m(),
        g.max_degree()
    );
    let inst = Instance::main(g.clone(), vec![3, 2]).expect("3 + 2 >= 5 + 2 - 2");
    let sol = solve(&inst, &SolveConfig::default()).unwrap();
    println!(
        "parts: {:?}",
        sol.partition
            .parts()
            .iter()
            .map(|p| p.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    print!("{}", emit_graph(&g, Format::EdgeList));
}

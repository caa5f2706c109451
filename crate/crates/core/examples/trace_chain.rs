//! Watch a move chain close on itself and get repaired.
//!
//! Part 0 starts as the 4-cycle 0-1-2-3 and part 1 as the path 4-5-6. Moving
//! 0 into part 1 closes 4-5-6 into another 4-cycle, moving 5 back closes
//! 1-2-3 again, and the repair then pushes vertex 1 out.

use defective_partition::engine::{chain_repair, potential, Instance, Partition, SolveConfig};
use defective_partition::graph::{Graph, VertexSet};

fn main() {
    let g = Graph::from_edges(
        7,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (0, 4),
            (0, 6),
            (5, 1),
            (5, 3),
        ],
    );
    let inst = Instance::main(g.clone(), vec![2, 2]).unwrap();
    let start = Partition::from_assignment(&g, 2, vec![0, 0, 0, 0, 1, 1, 1]).unwrap();
    println!("start: {:?}", potential(&inst, &start));

    let sol = chain_repair(
        &inst,
        start,
        (0, VertexSet::from(vec![0, 1, 2, 3])),
        &SolveConfig::default(),
    )
    .unwrap();
    print!("{}", sol.trace.to_json_lines());
    println!("end: {:?}", potential(&inst, &sol.partition));
}

//! Split the Petersen graph into two parts where every part induces paths.

use defective_partition::engine::{potential, solve, Instance, SolveConfig};
use defective_partition::graph::{generate, GraphSpec};
use defective_partition::verify::verify_partition;

fn main() {
    let g = generate(&GraphSpec::Petersen, 0).expect("petersen");
    let inst = Instance::main(g, vec![2, 2]).expect("2 + 2 >= 3 + 2 - 2");
    let sol = solve(&inst, &SolveConfig::default()).expect("solve");

    for (i, part) in sol.partition.parts().iter().enumerate() {
        println!("part {i}: {:?}", part.as_slice());
    }
    println!("potential: {:?}", potential(&inst, &sol.partition));
    println!(
        "moves: {}, valid: {}",
        sol.stats.moves,
        verify_partition(&inst, &sol.partition).ok
    );
}

//! Plug in a custom forbidden family: cycles on at least five vertices, so a
//! part with cap 2 may keep 4-cycles but no longer cycles.

use std::sync::Arc;

use defective_partition::engine::{solve, Instance, Mode, SolveConfig};
use defective_partition::graph::{induced_components, is_connected, is_regular, Graph, VertexSet};
use defective_partition::permissible::{family_for, PermissibleFamily};

#[derive(Debug)]
struct LongCycles;

impl PermissibleFamily for LongCycles {
    fn degree_target(&self) -> usize {
        2
    }

    fn contains(&self, g: &Graph, comp: &VertexSet) -> bool {
        comp.len() >= 5 && is_regular(g, comp, 2) && is_connected(g, comp)
    }
}

fn show(label: &str, g: &Graph, inst: &Instance) {
    let sol = solve(inst, &SolveConfig::default()).expect("solve");
    println!("{label}");
    for (i, part) in sol.partition.parts().iter().enumerate() {
        let comps: Vec<Vec<usize>> = induced_components(g, part)
            .into_iter()
            .map(VertexSet::into_vec)
            .collect();
        println!("  part {i}: components {comps:?}");
    }
}

fn main() {
    // A 4-cycle on 0..4 and a 5-cycle on 4..9.
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    edges.extend((4..9).map(|v| (v, if v == 8 { 4 } else { v + 1 })));
    let g = Graph::from_edges(9, edges);

    let shipped = Instance::main(g.clone(), vec![2, 0]).unwrap();
    show("non-complete 2-regular components forbidden:", &g, &shipped);

    let custom = Instance::new(
        g.clone(),
        vec![2, 0],
        vec![Arc::new(LongCycles), family_for(0)],
        Mode::Main,
    )
    .unwrap();
    show("only cycles of length >= 5 forbidden:", &g, &custom);
}

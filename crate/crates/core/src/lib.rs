//! Vertex partitions with per-part degree caps and forbidden components.
//!
//! Given a graph `G` and caps `r_1, ..., r_k` with `Σ r_i ≥ Δ(G) + 2 - k`,
//! [`engine::solve`] splits `V(G)` into `V_1, ..., V_k` so that each
//! `G[V_i]` has maximum degree at most `r_i` and contains no connected,
//! non-complete, `r_i`-regular component. With `r_i = 2` this gives parts that
//! induce disjoint unions of paths and triangles, which [`coloring`] turns
//! into explicit proper colorings.
//!
//! ```
//! use defective_partition::engine::{solve, Instance, SolveConfig};
//! use defective_partition::graph::{generate, GraphSpec};
//! use defective_partition::verify::verify_partition;
//!
//! let g = generate(&GraphSpec::Petersen, 0).unwrap();
//! let inst = Instance::main(g, vec![2, 2]).unwrap();
//! let sol = solve(&inst, &SolveConfig::default()).unwrap();
//! assert!(verify_partition(&inst, &sol.partition).ok);
//! ```

pub mod cli;
pub mod coloring;
pub mod engine;
pub mod graph;
pub mod permissible;
pub mod verify;

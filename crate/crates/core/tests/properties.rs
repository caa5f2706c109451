use defective_partition::coloring::color_part;
use defective_partition::engine::{solve, Instance, Mode, Partition, SolveConfig};
use defective_partition::graph::{
    degeneracy_order, emit_graph, induced_components, load_graph, non_cut_vertices, Format, Graph,
    VertexSet,
};
use defective_partition::permissible::family_for;
use defective_partition::verify::{verify_coloring, verify_partition};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = if n < 2 { 0 } else { n * (n - 1) / 2 };
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges)
        })
    })
}

fn graph_and_subset(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n)).prop_map(|(g, keep)| {
            let s: VertexSet = (0..g.n()).filter(|&v| keep[v]).collect();
            (g, s)
        })
    })
}

fn graph_and_assignment(
    max_n: usize,
    k: usize,
) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<usize>)> {
    graph(max_n).prop_flat_map(move |g| {
        let n = g.n();
        (
            Just(g),
            proptest::collection::vec(0..k, n),
            proptest::collection::vec(0usize..4, k),
        )
    })
}

/// Direct check: caps, then connected components that are r-regular on more
/// than r + 1 vertices with r >= 2.
fn naive_valid(g: &Graph, a: &[usize], r: &[usize]) -> bool {
    let n = g.n();
    let own = |v: usize| g.neighbors(v).iter().filter(|&&u| a[u] == a[v]).count();
    if (0..n).any(|v| own(v) > r[a[v]]) {
        return false;
    }
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &u in g.neighbors(v) {
                if !seen[u] && a[u] == a[start] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        let cap = r[a[start]];
        if cap >= 2 && comp.len() > cap + 1 && comp.iter().all(|&v| own(v) == cap) {
            return false;
        }
    }
    true
}

proptest! {
    #[test]
    fn io_round_trip(g in graph(14)) {
        for format in [Format::Dimacs, Format::EdgeList] {
            let back = load_graph(&emit_graph(&g, format), format).unwrap();
            prop_assert_eq!(&back, &g);
        }
    }

    #[test]
    fn degree_sum_is_twice_the_edges(g in graph(14)) {
        let sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, 2 * g.m());
    }

    #[test]
    fn components_partition_the_set((g, s) in graph_and_subset(12)) {
        let comps = induced_components(&g, &s);
        let mut all: Vec<usize> = comps.iter().flat_map(|c| c.iter().copied()).collect();
        all.sort();
        prop_assert_eq!(all, s.as_slice().to_vec());
        for (i, a) in comps.iter().enumerate() {
            prop_assert!(!a.is_empty());
            for b in &comps[i + 1..] {
                prop_assert!(a.iter().all(|&u| b.iter().all(|&v| !g.has_edge(u, v))));
            }
        }
    }

    #[test]
    fn non_cut_matches_component_count((g, s) in graph_and_subset(11)) {
        for comp in induced_components(&g, &s) {
            let non_cut = non_cut_vertices(&g, &comp).unwrap();
            for &v in comp.iter() {
                let rest = comp.without(v);
                let stays = induced_components(&g, &rest).len() <= 1;
                prop_assert_eq!(non_cut.contains(v), stays, "vertex {}", v);
            }
        }
    }

    #[test]
    fn degeneracy_bounds_greedy_colors((g, s) in graph_and_subset(12)) {
        let order = degeneracy_order(&g, &s);
        let max_deg = s.iter().map(|&v| g.neighbors(v).iter().filter(|u| s.contains(**u)).count()).max().unwrap_or(0);
        prop_assert!(order.degeneracy <= max_deg);
        let pc = color_part(&g, &s, usize::MAX);
        prop_assert!(pc.used <= order.degeneracy + 1);
        let mut colors: Vec<usize> = (0..g.n()).collect();
        for (&v, &c) in &pc.colors {
            colors[v] = g.n() + c;
        }
        prop_assert!(verify_coloring(&g, &colors));
    }

    #[test]
    fn verify_agrees_with_naive_check((g, a, r) in graph_and_assignment(9, 3)) {
        let fams = r.iter().map(|&x| family_for(x)).collect();
        let inst = Instance::unchecked(g.clone(), r.clone(), fams, Mode::Main).unwrap();
        let part = Partition::from_assignment(&g, 3, a.clone()).unwrap();
        prop_assert_eq!(verify_partition(&inst, &part).ok, naive_valid(&g, &a, &r));
    }

    #[test]
    fn solve_output_is_valid((g, _a, r) in graph_and_assignment(12, 3)) {
        if let Ok(inst) = Instance::main(g.clone(), r.clone()) {
            let sol = solve(&inst, &SolveConfig::default()).unwrap();
            prop_assert!(naive_valid(&g, sol.partition.assignment(), &r));
            prop_assert!(sol.trace.commits_strictly_decrease());
        }
    }
}

//! Families of forbidden components.
//!
//! A family with degree target `r` names connected graphs of maximum degree
//! `r` that a part with cap `r` must not contain as a component. The engine
//! only needs three things from a family: a membership test, a way to pick a
//! vertex whose removal keeps a member connected, and the common-neighbor
//! witness used when a move chain closes on itself. The engine re-checks
//! every witness it is handed, so a family that does not actually have the
//! required structure produces an error rather than a wrong partition.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{
    degree_in, degree_r_vertices, is_complete, is_connected, is_regular, non_cut_vertices, Graph,
    VertexSet,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("family with degree target {r} has no {what}")]
pub struct WitnessMissing {
    pub r: usize,
    pub what: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Empty,
    NonCompleteRegular,
    Custom,
}

pub trait PermissibleFamily: fmt::Debug + Send + Sync {
    /// The cap `r` of the parts this family is attached to.
    fn degree_target(&self) -> usize;

    fn kind(&self) -> FamilyKind {
        FamilyKind::Custom
    }

    /// True when no graph can ever be a member; the engine skips such parts.
    fn is_empty_family(&self) -> bool {
        self.kind() == FamilyKind::Empty
    }

    /// Whether the connected subgraph `G[comp]` is a member.
    fn contains(&self, g: &Graph, comp: &VertexSet) -> bool;

    /// A vertex `y` of degree `r` in `G[comp]` whose removal leaves `G[comp]`
    /// connected and, when `avoid` is given, with `y ∉ N(avoid) ∪ {avoid}`.
    /// Smallest such id.
    fn pick_removable(
        &self,
        g: &Graph,
        comp: &VertexSet,
        avoid: Option<usize>,
    ) -> Result<usize, WitnessMissing> {
        let r = self.degree_target();
        let missing = || WitnessMissing {
            r,
            what: format!(
                "removable vertex in {:?} avoiding {avoid:?}",
                comp.as_slice()
            ),
        };
        let loose = non_cut_vertices(g, comp).map_err(|_| missing())?;
        let top = degree_r_vertices(g, comp, r);
        loose
            .iter()
            .copied()
            .filter(|&y| top.contains(y))
            .find(|&y| match avoid {
                Some(x) => y != x && !g.has_edge(x, y),
                None => true,
            })
            .ok_or_else(missing)
    }

    /// A vertex `z ∈ b` adjacent to both `x_t` and `x_s` that had degree `r`
    /// in `G[b ∪ {x_s}]`. Smallest such id.
    fn find_common_witness(
        &self,
        g: &Graph,
        b: &VertexSet,
        x_t: usize,
        x_s: usize,
    ) -> Result<usize, WitnessMissing> {
        let r = self.degree_target();
        let whole = b.with(x_s);
        b.iter()
            .copied()
            .find(|&z| g.has_edge(z, x_t) && g.has_edge(z, x_s) && degree_in(g, &whole, z) == r)
            .ok_or_else(|| WitnessMissing {
                r,
                what: format!("common neighbor of {x_t} and {x_s} in {:?}", b.as_slice()),
            })
    }
}

/// The family with no members. The only choice for caps 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmptyFamily {
    pub r: usize,
}

impl PermissibleFamily for EmptyFamily {
    fn degree_target(&self) -> usize {
        self.r
    }

    fn kind(&self) -> FamilyKind {
        FamilyKind::Empty
    }

    fn contains(&self, _g: &Graph, _comp: &VertexSet) -> bool {
        false
    }
}

/// All connected `r`-regular graphs other than `K_{r+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonCompleteRegular {
    r: usize,
}

impl NonCompleteRegular {
    /// `None` for `r < 2`, where no non-empty family qualifies.
    pub fn new(r: usize) -> Option<Self> {
        (r >= 2).then_some(NonCompleteRegular { r })
    }
}

impl PermissibleFamily for NonCompleteRegular {
    fn degree_target(&self) -> usize {
        self.r
    }

    fn kind(&self) -> FamilyKind {
        FamilyKind::NonCompleteRegular
    }

    fn contains(&self, g: &Graph, comp: &VertexSet) -> bool {
        comp.len() > self.r + 1
            && is_regular(g, comp, self.r)
            && !is_complete(g, comp)
            && is_connected(g, comp)
    }
}

/// The shipped family for cap `r`: non-complete regular graphs for `r >= 2`,
/// otherwise empty.
pub fn family_for(r: usize) -> Arc<dyn PermissibleFamily> {
    match NonCompleteRegular::new(r) {
        Some(f) => Arc::new(f),
        None => Arc::new(EmptyFamily { r }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, induced_components, GraphSpec};

    fn gen(spec: GraphSpec) -> Graph {
        generate(&spec, 0).unwrap()
    }

    fn fam(r: usize) -> NonCompleteRegular {
        NonCompleteRegular::new(r).unwrap()
    }

    #[test]
    fn membership() {
        let c4 = gen(GraphSpec::Cycle(4));
        assert!(fam(2).contains(&c4, &c4.vertices()));
        let k3 = gen(GraphSpec::Complete(3));
        assert!(!fam(2).contains(&k3, &k3.vertices()));
        let p = gen(GraphSpec::Petersen);
        assert!(fam(3).contains(&p, &p.vertices()));
        let p3 = gen(GraphSpec::Path(3));
        assert!(!fam(2).contains(&p3, &p3.vertices()));
        assert!(!EmptyFamily { r: 2 }.contains(&c4, &c4.vertices()));
    }

    #[test]
    fn low_caps_only_admit_the_empty_family() {
        assert!(NonCompleteRegular::new(0).is_none());
        assert!(NonCompleteRegular::new(1).is_none());
        assert!(family_for(1).is_empty_family());
        assert!(!family_for(2).is_empty_family());
    }

    #[test]
    fn removable_in_cycles() {
        let c5 = gen(GraphSpec::Cycle(5));
        assert_eq!(fam(2).pick_removable(&c5, &c5.vertices(), Some(0)), Ok(2));
        let c4 = gen(GraphSpec::Cycle(4));
        assert_eq!(fam(2).pick_removable(&c4, &c4.vertices(), Some(0)), Ok(2));
        assert_eq!(fam(2).pick_removable(&c4, &c4.vertices(), None), Ok(0));
    }

    #[test]
    fn removable_in_petersen() {
        let p = gen(GraphSpec::Petersen);
        let y = fam(3).pick_removable(&p, &p.vertices(), Some(0)).unwrap();
        let non_neighbors: Vec<usize> = (1..10).filter(|&v| !p.has_edge(0, v)).collect();
        assert_eq!(y, non_neighbors[0]);
        assert_eq!(induced_components(&p, &p.vertices().without(y)).len(), 1);
    }

    #[test]
    fn removable_skips_cut_vertices() {
        // Two copies of K_4 with one edge subdivided, the subdivision
        // vertices 4 and 9 joined by a bridge.
        let g = Graph::from_edges(
            10,
            [
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
                (5, 7),
                (5, 8),
                (6, 7),
                (6, 8),
                (7, 8),
                (5, 9),
                (6, 9),
                (4, 9),
            ],
        );
        let f = fam(3);
        assert!(f.contains(&g, &g.vertices()));
        let loose = non_cut_vertices(&g, &g.vertices()).unwrap();
        assert!(!loose.contains(4) && !loose.contains(9));
        assert_eq!(f.pick_removable(&g, &g.vertices(), Some(2)), Ok(5));
        assert_eq!(f.pick_removable(&g, &g.vertices(), Some(0)), Ok(1));
    }

    #[test]
    fn common_witness() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 3)]);
        let b: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(fam(2).find_common_witness(&g, &b, 4, 0), Ok(1));

        let disjoint = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 2)]);
        assert!(fam(2).find_common_witness(&disjoint, &b, 4, 0).is_err());

        let k4_plus = Graph::from_edges(
            5,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 1),
                (4, 2),
                (4, 3),
            ],
        );
        assert_eq!(fam(3).find_common_witness(&k4_plus, &b, 4, 0), Ok(1));
    }

    /// Small named graphs plus all graphs on 4 and 5 vertices.
    fn corpus() -> Vec<Graph> {
        let mut out = vec![
            gen(GraphSpec::Petersen),
            gen(GraphSpec::Cycle(6)),
            gen(GraphSpec::Complete(4)),
        ];
        for n in 4..=5 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                out.push(Graph::from_edges(n, edges));
            }
        }
        out
    }

    #[test]
    fn removing_a_top_vertex_leaves_the_family() {
        for g in corpus() {
            for r in 2..=4 {
                let f = fam(r);
                for comp in induced_components(&g, &g.vertices()) {
                    if !f.contains(&g, &comp) {
                        continue;
                    }
                    for &x in degree_r_vertices(&g, &comp, r).iter() {
                        for rest in induced_components(&g, &comp.without(x)) {
                            assert!(!f.contains(&g, &rest));
                        }
                        let y = f.pick_removable(&g, &comp, Some(x)).unwrap();
                        assert!(y != x && !g.has_edge(x, y));
                        assert_eq!(induced_components(&g, &comp.without(y)).len(), 1);
                    }
                }
            }
        }
    }

    /// Exhaustive reattachment check: for every member `G`, top vertex `x`,
    /// and `r`-subset `A` of `G - x`, if joining a new vertex to `A` gives a
    /// member then `A` meets `N(x)` among the top vertices.
    #[test]
    fn reattachment_condition_on_small_members() {
        fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 0..items.len() {
                for mut rest in subsets(&items[i + 1..], k - 1) {
                    rest.insert(0, items[i]);
                    out.push(rest);
                }
            }
            out
        }
        let mut checked = 0;
        for n in 4..=8 {
            for r in 2..=3 {
                if (n * r) % 2 != 0 || r >= n {
                    continue;
                }
                for seed in 0..4 {
                    let g = generate(&GraphSpec::RandomRegular { n, r }, seed).unwrap();
                    let f = fam(r);
                    if !f.contains(&g, &g.vertices()) {
                        continue;
                    }
                    for x in 0..n {
                        let h = g.vertices().without(x);
                        for a in subsets(h.as_slice(), r) {
                            let mut edges: Vec<(usize, usize)> =
                                g.edges().filter(|&(u, v)| u != x && v != x).collect();
                            edges.extend(a.iter().map(|&v| (v, x)));
                            let reattached = Graph::from_edges(n, edges);
                            if f.contains(&reattached, &reattached.vertices()) {
                                assert!(a.iter().any(|&v| g.has_edge(v, x)));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

/// An assignment of every vertex to one of `k` parts, with a cache of how many
/// neighbors each vertex has in each part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    assignment: Vec<usize>,
    // Row-major n x k: degrees[v * k + j] = |N(v) ∩ V_j|.
    degrees: Vec<usize>,
}

impl Partition {
    /// Builds a partition from an explicit assignment. `None` if the length
    /// does not match `g` or a part index is `>= k`.
    pub fn from_assignment(g: &Graph, k: usize, assignment: Vec<usize>) -> Option<Self> {
        if assignment.len() != g.n() || assignment.iter().any(|&p| p >= k) {
            return None;
        }
        let mut degrees = vec![0; g.n() * k];
        for (u, v) in g.edges() {
            degrees[u * k + assignment[v]] += 1;
            degrees[v * k + assignment[u]] += 1;
        }
        Some(Partition {
            k,
            assignment,
            degrees,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `d_{G[V_part]}(v)`, whether or not `v` lies in `part`.
    pub fn degree_to(&self, v: usize, part: usize) -> usize {
        self.degrees[v * self.k + part]
    }

    /// Degree of `v` inside its own part.
    pub fn own_degree(&self, v: usize) -> usize {
        self.degree_to(v, self.assignment[v])
    }

    pub fn part_members(&self, part: usize) -> VertexSet {
        (0..self.n())
            .filter(|&v| self.assignment[v] == part)
            .collect()
    }

    pub fn parts(&self) -> Vec<VertexSet> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &p) in self.assignment.iter().enumerate() {
            out[p].push(v);
        }
        out.into_iter().map(VertexSet::from).collect()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &p in &self.assignment {
            sizes[p] += 1;
        }
        sizes
    }

    pub fn move_vertex(&mut self, g: &Graph, v: usize, to: usize) {
        let from = self.assignment[v];
        if from == to {
            return;
        }
        self.assignment[v] = to;
        for &u in g.neighbors(v) {
            self.degrees[u * self.k + from] -= 1;
            self.degrees[u * self.k + to] += 1;
        }
    }

    fn grow(&self, g: &Graph, v: usize, seen: &mut [bool]) -> VertexSet {
        let part = self.assignment[v];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] && self.assignment[w] == part {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        VertexSet::from(comp)
    }

    /// The component of `G[V_i]` containing `v`, where `i` is `v`'s part.
    pub fn component_of(&self, g: &Graph, v: usize) -> VertexSet {
        self.grow(g, v, &mut vec![false; self.n()])
    }

    /// All components of all parts as `(part, vertices)`, ordered by part and
    /// then by minimum vertex.
    pub fn components(&self, g: &Graph) -> Vec<(usize, VertexSet)> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for v in 0..self.n() {
            if !seen[v] {
                out.push((self.assignment[v], self.grow(g, v, &mut seen)));
            }
        }
        // Roots are visited in id order, so each part's list is already
        // ordered by minimum vertex.
        out.sort_by_key(|(part, _)| *part);
        out
    }

    /// Whether the degree cache matches a from-scratch recount.
    pub fn cache_is_consistent(&self, g: &Graph) -> bool {
        Partition::from_assignment(g, self.k, self.assignment.clone()).as_ref() == Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_keep_the_cache_consistent() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 3)]);
        let mut p = Partition::from_assignment(&g, 3, vec![0; 5]).unwrap();
        assert_eq!(p.own_degree(1), 3);
        for (v, to) in [(1, 2), (4, 1), (1, 0), (0, 2), (3, 1)] {
            p.move_vertex(&g, v, to);
            assert!(p.cache_is_consistent(&g));
        }
        assert_eq!(p.part_sizes().iter().sum::<usize>(), 5);
    }

    #[test]
    fn components_by_part() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        let p = Partition::from_assignment(&g, 2, vec![0, 0, 1, 0, 0]).unwrap();
        let comps = p.components(&g);
        let want: Vec<(usize, VertexSet)> = vec![
            (0, vec![0, 1].into()),
            (0, vec![3, 4].into()),
            (1, vec![2].into()),
        ];
        assert_eq!(comps, want);
        assert_eq!(p.component_of(&g, 4), VertexSet::from(vec![3, 4]));
    }

    #[test]
    fn rejects_bad_assignments() {
        let g = Graph::empty(3);
        assert!(Partition::from_assignment(&g, 2, vec![0, 1]).is_none());
        assert!(Partition::from_assignment(&g, 2, vec![0, 1, 2]).is_none());
    }
}

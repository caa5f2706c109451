//! Seeded graph generators for test corpora and benchmarks.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

/// Rejection-sampling attempts before [`GraphSpec::RandomRegular`] gives up.
pub const REGULAR_ATTEMPT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSpec {
    Gnp {
        n: usize,
        p: f64,
    },
    RandomRegular {
        n: usize,
        r: usize,
    },
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Petersen,
    /// `G(n, p)` with triangles broken up deterministically.
    TriangleFreeGnp {
        n: usize,
        p: f64,
    },
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Gnp { n, p } => write!(f, "gnp:{n},{p}"),
            GraphSpec::RandomRegular { n, r } => write!(f, "regular:{n},{r}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Petersen => write!(f, "petersen"),
            GraphSpec::TriangleFreeGnp { n, p } => write!(f, "trifree:{n},{p}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadParameter(format!("bad generator spec {s:?}"));
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').collect()
        };
        let int = |i: usize| -> Result<usize, GraphError> {
            args.get(i)
                .and_then(|a| a.trim().parse().ok())
                .ok_or_else(bad)
        };
        let prob = |i: usize| -> Result<f64, GraphError> {
            args.get(i)
                .and_then(|a| a.trim().parse::<f64>().ok())
                .filter(|p| (0.0..=1.0).contains(p))
                .ok_or_else(bad)
        };
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let spec = match kind {
            "gnp" => {
                arity(2)?;
                GraphSpec::Gnp {
                    n: int(0)?,
                    p: prob(1)?,
                }
            }
            "trifree" => {
                arity(2)?;
                GraphSpec::TriangleFreeGnp {
                    n: int(0)?,
                    p: prob(1)?,
                }
            }
            "regular" => {
                arity(2)?;
                GraphSpec::RandomRegular {
                    n: int(0)?,
                    r: int(1)?,
                }
            }
            "cycle" => {
                arity(1)?;
                GraphSpec::Cycle(int(0)?)
            }
            "path" => {
                arity(1)?;
                GraphSpec::Path(int(0)?)
            }
            "complete" => {
                arity(1)?;
                GraphSpec::Complete(int(0)?)
            }
            "petersen" => {
                arity(0)?;
                GraphSpec::Petersen
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// Builds the graph described by `spec`. The same seed always yields the
/// same graph.
pub fn generate(spec: &GraphSpec, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        GraphSpec::Gnp { n, p } => Ok(gnp(n, p, &mut rng)),
        GraphSpec::TriangleFreeGnp { n, p } => Ok(remove_triangles(&gnp(n, p, &mut rng))),
        GraphSpec::RandomRegular { n, r } => random_regular(n, r, &mut rng),
        GraphSpec::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::BadParameter(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))))
        }
        GraphSpec::Path(n) => Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))),
        GraphSpec::Complete(n) => Ok(Graph::from_edges(
            n,
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
        )),
        GraphSpec::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
            Ok(Graph::from_edges(10, outer.chain(spokes).chain(inner)))
        }
    }
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Deletes edge `{b, c}` from the lexicographically first triangle `a < b < c`
/// until none is left.
fn remove_triangles(g: &Graph) -> Graph {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    for a in 0..n {
        'restart: loop {
            let higher: Vec<usize> = adj[a].range(a + 1..).copied().collect();
            for (i, &b) in higher.iter().enumerate() {
                for &c in &higher[i + 1..] {
                    if adj[b].contains(&c) {
                        adj[b].remove(&c);
                        adj[c].remove(&b);
                        continue 'restart;
                    }
                }
            }
            break;
        }
    }
    Graph::from_edges(
        n,
        adj.iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v))),
    )
}

/// Pairing model with whole-graph rejection of loops and parallel edges.
/// Incremental pairing: random pairs of remaining points are joined when
/// they form a new, loop-free edge. A dead end restarts the attempt.
fn random_regular(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Result<Graph, GraphError> {
    if !(n * r).is_multiple_of(2) || (n > 0 && r >= n) {
        return Err(GraphError::BadParameter(format!(
            "no {r}-regular graph on {n} vertices"
        )));
    }
    'attempt: for _ in 0..REGULAR_ATTEMPT_CAP {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
        let mut edges = BTreeSet::new();
        let mut misses = 0;
        while !points.is_empty() {
            let i = rng.random_range(0..points.len());
            let j = rng.random_range(0..points.len());
            let (u, v) = (points[i].min(points[j]), points[i].max(points[j]));
            if u != v && !edges.contains(&(u, v)) {
                edges.insert((u, v));
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                misses = 0;
                continue;
            }
            misses += 1;
            if misses > 4 * points.len() {
                let stuck = points.iter().all(|&a| {
                    points
                        .iter()
                        .all(|&b| a == b || edges.contains(&(a.min(b), a.max(b))))
                });
                if stuck {
                    continue 'attempt;
                }
                misses = 0;
            }
        }
        return Ok(Graph::from_edges(n, edges));
    }
    Err(GraphError::GenerationFailed(format!(
        "no simple {r}-regular pairing on {n} vertices after {REGULAR_ATTEMPT_CAP} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{has_clique, is_regular};

    #[test]
    fn named_graphs() {
        let c4 = generate(&GraphSpec::Cycle(4), 0).unwrap();
        assert_eq!(c4, Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]));
        let k4 = generate(&GraphSpec::Complete(4), 0).unwrap();
        assert_eq!(k4.m(), 6);
        let p = generate(&GraphSpec::Petersen, 0).unwrap();
        assert!(is_regular(&p, &p.vertices(), 3));
        assert!(!has_clique(&p, 3).unwrap());
    }

    #[test]
    fn triangle_free_gnp_is_triangle_free() {
        let g = generate(&GraphSpec::TriangleFreeGnp { n: 30, p: 0.2 }, 7).unwrap();
        assert!(!has_clique(&g, 3).unwrap());
        assert!(g.m() > 0);
        for seed in 0..20 {
            let g = generate(&GraphSpec::TriangleFreeGnp { n: 20, p: 0.5 }, seed).unwrap();
            assert!(!has_clique(&g, 3).unwrap());
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let spec = GraphSpec::Gnp { n: 40, p: 0.1 };
        assert_eq!(generate(&spec, 3).unwrap(), generate(&spec, 3).unwrap());
        assert_ne!(generate(&spec, 3).unwrap(), generate(&spec, 4).unwrap());
    }

    #[test]
    fn random_regular_graphs() {
        for seed in 0..5 {
            let g = generate(&GraphSpec::RandomRegular { n: 16, r: 3 }, seed).unwrap();
            assert!(is_regular(&g, &g.vertices(), 3));
        }
        assert!(matches!(
            generate(&GraphSpec::RandomRegular { n: 5, r: 3 }, 0),
            Err(GraphError::BadParameter(_))
        ));
    }

    #[test]
    fn dense_regular_graphs() {
        for (n, r) in [(10, 8), (40, 6), (7, 6), (60, 12)] {
            let g = generate(&GraphSpec::RandomRegular { n, r }, 3).unwrap();
            assert!(is_regular(&g, &g.vertices(), r), "regular:{n},{r}");
        }
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "gnp:20,0.2",
            "cycle:5",
            "path:4",
            "complete:4",
            "petersen",
            "regular:10,3",
            "trifree:30,0.25",
        ] {
            let spec: GraphSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for bad in ["gnp:20", "cycle", "petersen:3", "gnp:20,1.5", "tree:4"] {
            assert!(bad.parse::<GraphSpec>().is_err(), "{bad}");
        }
    }
}

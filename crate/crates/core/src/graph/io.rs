//! DIMACS `.col` and plain edge-list readers and writers.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `p edge <n> <m>` header followed by 1-based `e <u> <v>` lines.
    Dimacs,
    /// One 0-based `u v` pair per line. `#` starts a comment.
    EdgeList,
}

impl Format {
    /// Guesses the format from a file name: `.col`/`.dimacs` are DIMACS,
    /// anything else is an edge list.
    pub fn from_path(path: &str) -> Format {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".col") || lower.ends_with(".dimacs") {
            Format::Dimacs
        } else {
            Format::EdgeList
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dimacs" | "col" => Ok(Format::Dimacs),
            "edgelist" | "edges" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_id(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

pub fn load_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Dimacs => load_dimacs(text),
        Format::EdgeList => load_edge_list(text),
    }
}

fn load_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_err(
                            line,
                            format!("unsupported problem type {other:?}"),
                        ))
                    }
                }
                n = Some(parse_id(toks.next(), line, "vertex count")?);
                // The declared edge count is advisory: duplicate `e` lines are collapsed.
                parse_id(toks.next(), line, "edge count")?;
            }
            Some("e") => {
                let u = parse_id(toks.next(), line, "endpoint")?;
                let v = parse_id(toks.next(), line, "endpoint")?;
                if u == v {
                    return Err(parse_err(line, format!("loop at vertex {u}")));
                }
                let Some(n) = n else {
                    return Err(parse_err(line, "edge before problem line"));
                };
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(line, format!("vertex out of range 1..={n}")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(tok) => return Err(parse_err(line, format!("unexpected token {tok:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    Ok(Graph::from_edges(n, edges))
}

fn load_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = match raw.split_once('#') {
            Some((body, comment)) => {
                // `# n <count>` records trailing isolated vertices.
                let mut c = comment.split_whitespace();
                if let (Some("n"), Some(count), None) = (c.next(), c.next(), c.next()) {
                    if let Ok(count) = count.parse() {
                        declared = Some(count);
                    }
                }
                body
            }
            None => raw,
        };
        let mut toks = body.split_whitespace();
        let Some(first) = toks.next() else { continue };
        let u = parse_id(Some(first), line, "endpoint")?;
        let v = parse_id(toks.next(), line, "endpoint")?;
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("trailing token {extra:?}")));
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let needed = max_id.map_or(0, |m| m + 1);
    let n = match declared {
        Some(d) if d < needed => {
            return Err(parse_err(
                0,
                format!("vertex {} out of range for declared n = {d}", needed - 1),
            ));
        }
        Some(d) => d,
        None => needed,
    };
    Ok(Graph::from_edges(n, edges))
}

pub fn emit_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Dimacs => {
            writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
            for (u, v) in g.edges() {
                writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
            }
        }
        Format::EdgeList => {
            writeln!(out, "# n {}", g.n()).unwrap();
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}").unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphSpec};

    #[test]
    fn dimacs_path() {
        let g = load_graph("p edge 3 2\ne 1 2\ne 2 3", Format::Dimacs).unwrap();
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2)]));
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn edge_list_triangle() {
        let g = load_graph("0 1\n1 2\n2 0", Format::EdgeList).unwrap();
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]));
    }

    #[test]
    fn loops_are_rejected() {
        assert!(matches!(
            load_graph("e 1 1", Format::Dimacs),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            load_graph("3 3", Format::EdgeList),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn dimacs_comments_and_duplicates() {
        let text = "c a comment\np edge 3 3\ne 1 2\ne 2 1\nc another\ne 2 3\n";
        let g = load_graph(text, Format::Dimacs).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn dimacs_errors() {
        for bad in [
            "p edge 3 1\ne 1 4",
            "e 1 2",
            "p edge 3 1\ne 1",
            "p edge x 1",
            "q 1 2",
            "p edge 2 1\ne 0 1",
        ] {
            assert!(
                matches!(
                    load_graph(bad, Format::Dimacs),
                    Err(GraphError::Parse { .. })
                ),
                "{bad}"
            );
        }
    }

    #[test]
    fn edge_list_comments_and_blanks() {
        let g = load_graph("# header\n\n0 1 # trailing\n\n1 2\n", Format::EdgeList).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(load_graph("0 1 2", Format::EdgeList).is_err());
        assert!(load_graph("# n 2\n0 5", Format::EdgeList).is_err());
    }

    #[test]
    fn round_trip_keeps_isolated_vertices() {
        let g = Graph::from_edges(6, [(0, 3), (1, 2)]);
        for fmt in [Format::Dimacs, Format::EdgeList] {
            assert_eq!(load_graph(&emit_graph(&g, fmt), fmt).unwrap(), g);
        }
    }

    #[test]
    fn round_trip_generated() {
        let specs = [
            GraphSpec::Gnp { n: 25, p: 0.2 },
            GraphSpec::TriangleFreeGnp { n: 30, p: 0.3 },
            GraphSpec::RandomRegular { n: 12, r: 3 },
            GraphSpec::Petersen,
        ];
        for (seed, spec) in specs.iter().enumerate() {
            let g = generate(spec, seed as u64).unwrap();
            for fmt in [Format::Dimacs, Format::EdgeList] {
                assert_eq!(load_graph(&emit_graph(&g, fmt), fmt).unwrap(), g);
            }
        }
    }
}

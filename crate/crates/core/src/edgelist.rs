//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! 4          <- vertex count
//! 0 1        <- unit-weight edge
//! 1 2 5      <- weighted edge
//! 3          <- lone vertex declaration
//! ```
//!
//! When every endpoint is a plain decimal below `n` (so `07` does not count)
//! the ids are used as they are.
//! Otherwise all endpoint tokens are labels, numbered `0, 1, …` in order of
//! first appearance; vertices never mentioned get labels `_<id>`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{build_graph, EdgeSpec, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Graph labelled by its own ids.
    pub fn numbered(graph: Graph) -> Self {
        let labels = (0..graph.n()).map(|i| i.to_string()).collect();
        LabeledGraph { graph, labels }
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    fn is_numbered(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, l)| *l == i.to_string())
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<LabeledGraph> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        (!t.is_empty() && !t.starts_with('#')).then(|| Line {
            number: i + 1,
            tokens: t.split_whitespace().collect(),
        })
    });
    let header = lines.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    if header.tokens.len() != 1 {
        return Err(parse_err(header.number, "first line must be the vertex count"));
    }
    let n: usize = header.tokens[0]
        .parse()
        .map_err(|_| parse_err(header.number, format!("bad vertex count {:?}", header.tokens[0])))?;

    let body: Vec<Line> = lines.collect();
    for line in &body {
        if line.tokens.len() > 3 {
            return Err(parse_err(line.number, "expected `u v` or `u v w`"));
        }
    }
    let endpoints = |l: &Line<'_>| l.tokens.len().min(2);
    let numeric = body.iter().all(|l| {
        l.tokens[..endpoints(l)]
            .iter()
            .all(|t| t.parse::<usize>().is_ok_and(|id| id < n && id.to_string() == *t))
    });

    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut edges: Vec<EdgeSpec> = Vec::new();
    for line in &body {
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip(&line.tokens[..endpoints(line)]) {
            *slot = if numeric {
                tok.parse().expect("checked numeric")
            } else if let Some(&id) = index.get(tok) {
                id
            } else {
                if labels.len() == n {
                    return Err(parse_err(
                        line.number,
                        format!("label {tok:?} exceeds the declared {n} vertices"),
                    ));
                }
                index.insert(tok, labels.len());
                labels.push(tok.to_string());
                labels.len() - 1
            };
        }
        if line.tokens.len() == 1 {
            continue;
        }
        let w = match line.tokens.get(2) {
            None => None,
            Some(t) => {
                let w: i64 = t
                    .parse()
                    .map_err(|_| parse_err(line.number, format!("bad weight {t:?}")))?;
                if w < 0 {
                    return Err(parse_err(line.number, format!("negative weight {w}")));
                }
                Some(w)
            }
        };
        edges.push((ids[0], ids[1], w));
    }
    let graph = build_graph(n, edges)?;
    if numeric {
        return Ok(LabeledGraph::numbered(graph));
    }
    for id in labels.len()..n {
        labels.push(format!("_{id}"));
    }
    Ok(LabeledGraph { graph, labels })
}

/// Canonical text form. Labelled graphs first declare every vertex in id
/// order so that re-parsing reproduces the same ids.
pub fn write(g: &LabeledGraph) -> String {
    let numbered = g.is_numbered();
    let name = |id: usize| -> &str { &g.labels[id] };
    let mut out = format!("{}\n", g.graph.n());
    if !numbered {
        for l in &g.labels {
            out.push_str(l);
            out.push('\n');
        }
    }
    for e in g.graph.edges() {
        out.push_str(name(e.u));
        out.push(' ');
        out.push_str(name(e.v));
        if e.w != 1 {
            out.push(' ');
            out.push_str(&e.w.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::samples;

    #[test]
    fn numeric_file() {
        let g = parse("# a path\n3\n\n0 1\n1 2 4\n").unwrap();
        assert_eq!(g.graph.n(), 3);
        assert_eq!(g.labels, vec!["0", "1", "2"]);
        assert_eq!(write(&g), "3\n0 1\n1 2 4\n");
    }

    #[test]
    fn padded_numbers_are_labels() {
        let g = parse("2\n01 00\n").unwrap();
        assert_eq!(g.labels, vec!["01", "00"]);
    }

    #[test]
    fn labels_by_first_appearance() {
        let g = parse("6\nA B\nA D\nB C\nB D\nC F\nD E\nE F\n").unwrap();
        assert_eq!(g.labels, vec!["A", "B", "D", "C", "F", "E"]);
        assert_eq!(g.id_of("C"), Some(3));
        let again = parse(&write(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn one_based_ids_become_labels() {
        let (tree, _) = samples::sixteen_vertex_tree();
        let text: String = std::iter::once("16\n".to_string())
            .chain(tree.edges().iter().map(|e| format!("{} {}\n", e.u + 1, e.v + 1)))
            .collect();
        let g = parse(&text).unwrap();
        assert_eq!(g.labels[0], "1");
        assert_eq!(g.graph.edge_count(), 15);
    }

    #[test]
    fn isolated_vertices() {
        let g = parse("3\nx y\n").unwrap();
        assert_eq!(g.labels, vec!["x", "y", "_2"]);
        let g = parse("3\nx\nz y\n").unwrap();
        assert_eq!(g.labels, vec!["x", "z", "y"]);
        assert_eq!(g.graph.edge_count(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse("2\n0 1 -3\n"),
            Err(Error::Parse { line: 2, msg: "negative weight -3".into() })
        );
        assert!(matches!(parse("\n\nx\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("2\n0 1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("2\na b\nc d\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("2\n0 1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
    }
}

//! Plain-text graph format.
//!
//! ```text
//! n m
//! u v [label]
//! ...
//! ```
//!
//! The header gives the vertex and edge counts, followed by exactly `m` edge
//! lines. Labels are optional but must be present on every edge line or on
//! none; when present they must form a bijection onto `1..=m`. Blank lines
//! are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::{EdgeOrdering, OrderedGraph};

fn parse_field<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} {tok:?}"),
    })
}

pub fn parse_graph(text: &str) -> Result<(Graph, Option<EdgeOrdering>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: "header must be \"n m\"".into(),
        });
    }
    let n: usize = parse_field(toks[0], hline, "vertex count")?;
    let m: usize = parse_field(toks[1], hline, "edge count")?;

    let mut edges = Vec::with_capacity(m);
    let mut labels: Vec<u32> = Vec::new();
    let mut labelled: Option<bool> = None;
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(Error::Parse {
                line: lineno,
                message: format!("more than the declared {m} edges"),
            });
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(Error::Parse {
                line: lineno,
                message: "expected \"u v\" or \"u v label\"".into(),
            });
        }
        let has_label = toks.len() == 3;
        if *labelled.get_or_insert(has_label) != has_label {
            return Err(Error::Parse {
                line: lineno,
                message: "labels must be given on every edge line or none".into(),
            });
        }
        let u: u32 = parse_field(toks[0], lineno, "vertex")?;
        let v: u32 = parse_field(toks[1], lineno, "vertex")?;
        if u as usize >= n || v as usize >= n {
            return Err(Error::Parse {
                line: lineno,
                message: format!("vertex out of range for n = {n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                message: "self-loop".into(),
            });
        }
        if has_label {
            labels.push(parse_field(toks[2], lineno, "label")?);
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    let graph = Graph::from_edges(n, edges)?;
    let ordering = if labelled == Some(true) {
        Some(EdgeOrdering::new(labels)?)
    } else {
        None
    };
    Ok((graph, ordering))
}

pub fn parse_ordered_graph(text: &str) -> Result<OrderedGraph> {
    match parse_graph(text)? {
        (g, Some(o)) => OrderedGraph::new(g, o),
        (g, None) if g.edge_count() == 0 => Ok(OrderedGraph::with_identity(g)),
        _ => Err(Error::Parse {
            line: 2,
            message: "edge labels required".into(),
        }),
    }
}

pub fn write_graph(graph: &Graph, ordering: Option<&EdgeOrdering>) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", graph.vertex_count(), graph.edge_count()).unwrap();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        match ordering {
            Some(o) => writeln!(out, "{u} {v} {}", o.label(e)).unwrap(),
            None => writeln!(out, "{u} {v}").unwrap(),
        }
    }
    out
}

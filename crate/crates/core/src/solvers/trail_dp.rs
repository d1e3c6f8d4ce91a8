//! Exact longest increasing trail.
//!
//! Edges are scanned in increasing label order while `best[v]` holds the
//! length of the longest increasing trail ending at `v` among the edges seen
//! so far. An edge `uv` extends a trail ending at `v` into one ending at `u`
//! and vice versa; both updates read the values from *before* the edge, since
//! a trail may not use the same edge twice. Because labels strictly increase
//! along a trail, no other edge-distinctness bookkeeping is needed.

use crate::graph::Graph;
use crate::ordering::{ordering_from_reals, OrderedGraph, RealLabeling};
use crate::solvers::walk::Trail;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Improvement {
    edge: u32,
    from: u32,
    parent: u32,
}

/// Runs the DP over `order` (edge indices, smallest label first) and
/// returns the witness as vertex and edge sequences.
fn trail_dp(graph: &Graph, order: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = graph.vertex_count();
    let mut best = vec![0u32; n];
    let mut record = vec![NONE; n];
    let mut log: Vec<Improvement> = Vec::with_capacity(order.len());
    for &e in order {
        let (u, v) = graph.edge(e as usize);
        let (lu, lv) = (best[u as usize], best[v as usize]);
        let (ru, rv) = (record[u as usize], record[v as usize]);
        if lv + 1 > lu {
            best[u as usize] = lv + 1;
            record[u as usize] = log.len() as u32;
            log.push(Improvement {
                edge: e,
                from: v,
                parent: rv,
            });
        }
        if lu + 1 > lv {
            best[v as usize] = lu + 1;
            record[v as usize] = log.len() as u32;
            log.push(Improvement {
                edge: e,
                from: u,
                parent: ru,
            });
        }
    }
    let Some(end) = (0..n).max_by_key(|&v| (best[v], std::cmp::Reverse(v))) else {
        return (Vec::new(), Vec::new());
    };
    if best[end] == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut vertices = vec![end as u32];
    let mut edges = Vec::with_capacity(best[end] as usize);
    let mut r = record[end];
    while r != NONE {
        let imp = log[r as usize];
        edges.push(imp.edge);
        vertices.push(imp.from);
        r = imp.parent;
    }
    vertices.reverse();
    edges.reverse();
    (vertices, edges)
}

fn with_labels(vertices: Vec<u32>, edges: Vec<u32>, labels: &[u32]) -> Trail {
    let labels = edges.iter().map(|&e| labels[e as usize]).collect();
    Trail {
        vertices,
        edges,
        labels,
    }
}

pub fn longest_increasing_trail(og: &OrderedGraph) -> Trail {
    let order = og.ordering.edges_by_label();
    let (v, e) = trail_dp(&og.graph, &order);
    with_labels(v, e, og.labels())
}

/// The same DP driven by real labels; the witness carries rank labels.
pub fn longest_increasing_trail_reals(graph: &Graph, x: &RealLabeling) -> Trail {
    let vals = x.values();
    let mut order: Vec<u32> = (0..vals.len() as u32).collect();
    order.sort_by(|&a, &b| vals[a as usize].total_cmp(&vals[b as usize]).then(a.cmp(&b)));
    let (v, e) = trail_dp(graph, &order);
    with_labels(v, e, ordering_from_reals(x).labels())
}

/// Length only, for an explicit processing order. Used by sampling and
/// exhaustive routines that score millions of orderings.
pub fn trail_length_for_order(graph: &Graph, order: &[u32], scratch: &mut Vec<u32>) -> usize {
    scratch.clear();
    scratch.resize(graph.vertex_count(), 0);
    let mut longest = 0;
    for &e in order {
        let (u, v) = graph.edge(e as usize);
        let (lu, lv) = (scratch[u as usize], scratch[v as usize]);
        scratch[u as usize] = lu.max(lv + 1);
        scratch[v as usize] = lv.max(lu + 1);
        longest = longest.max(lu.max(lv) + 1);
    }
    longest as usize
}

pub fn longest_increasing_trail_length(og: &OrderedGraph) -> usize {
    trail_length_for_order(&og.graph, &og.ordering.edges_by_label(), &mut Vec::new())
}

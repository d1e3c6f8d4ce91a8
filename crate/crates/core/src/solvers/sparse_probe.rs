//! Sparse-regime probe: take one long path found without looking at the
//! labels, cut it into edge-disjoint segments of `k` edges and count the
//! segments that are increasing in either direction. Each segment is
//! increasing with probability exactly `2 / k!`, independently.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ordering::OrderedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseProbe {
    /// Length of the label-blind path that was chopped.
    pub path_length: usize,
    pub segments: usize,
    pub increasing_segments: usize,
}

/// Deepest root-to-node path of a depth-first search tree from `root`, as
/// `(vertices, edges)` ending at the deepest vertex.
fn deepest_dfs_path(graph: &Graph, root: u32) -> (Vec<u32>, Vec<u32>) {
    let n = graph.vertex_count();
    let mut parent: Vec<Option<(u32, u32)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut depth = vec![0u32; n];
    let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
    seen[root as usize] = true;
    let mut deepest = root;
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let inc = graph.incident(v as usize);
        if i == inc.len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let w = inc[i].neighbor;
        if !seen[w as usize] {
            seen[w as usize] = true;
            parent[w as usize] = Some((v, inc[i].edge));
            depth[w as usize] = depth[v as usize] + 1;
            if depth[w as usize] > depth[deepest as usize] {
                deepest = w;
            }
            stack.push((w, 0));
        }
    }
    let mut vertices = vec![deepest];
    let mut edges = Vec::new();
    let mut cur = deepest;
    while let Some((p, e)) = parent[cur as usize] {
        vertices.push(p);
        edges.push(e);
        cur = p;
    }
    (vertices, edges)
}

/// A long path chosen without reading labels: a depth-first sweep from a
/// maximum-degree vertex, then a second sweep from the deepest vertex found.
pub fn long_path_ignoring_labels(graph: &Graph) -> Vec<u32> {
    let Some(start) = (0..graph.vertex_count()).max_by_key(|&v| (graph.degree(v), std::cmp::Reverse(v))) else {
        return Vec::new();
    };
    let (first, _) = deepest_dfs_path(graph, start as u32);
    let (_, edges) = deepest_dfs_path(graph, first[0]);
    edges
}

pub fn sparse_probe(og: &OrderedGraph, k: usize) -> SparseProbe {
    let path_edges = long_path_ignoring_labels(&og.graph);
    let path_length = path_edges.len();
    if k == 0 || path_length < k {
        return SparseProbe {
            path_length,
            segments: 0,
            increasing_segments: 0,
        };
    }
    let labels: Vec<u32> = path_edges.iter().map(|&e| og.ordering.label(e as usize)).collect();
    let increasing_segments = labels
        .chunks_exact(k)
        .filter(|seg| seg.windows(2).all(|w| w[0] < w[1]) || seg.windows(2).all(|w| w[0] > w[1]))
        .count();
    SparseProbe {
        path_length,
        segments: path_length / k,
        increasing_segments,
    }
}

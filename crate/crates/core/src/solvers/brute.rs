//! Exhaustive oracles: enumerate every increasing walk and keep the longest.
//! Deliberately naive and independent of the DP and the pruned search.

use crate::error::{Error, Result};
use crate::ordering::OrderedGraph;

pub const BRUTEFORCE_EDGE_LIMIT: usize = 25;

fn guard(og: &OrderedGraph) -> Result<()> {
    let m = og.graph.edge_count();
    if m > BRUTEFORCE_EDGE_LIMIT {
        return Err(Error::SizeGuard {
            edges: m,
            limit: BRUTEFORCE_EDGE_LIMIT,
        });
    }
    Ok(())
}

struct Walker<'a> {
    og: &'a OrderedGraph,
    used_edges: u32,
    on_walk: Vec<bool>,
    distinct_vertices: bool,
}

impl Walker<'_> {
    /// Longest continuation from `v` given the last label used.
    fn extend(&mut self, v: u32, last: Option<u32>) -> usize {
        let mut best = 0;
        for e in 0..self.og.graph.edge_count() {
            let (a, b) = self.og.graph.edge(e);
            let next = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            let label = self.og.ordering.label(e);
            if last.is_some_and(|l| label <= l) || self.used_edges & (1 << e) != 0 {
                continue;
            }
            if self.distinct_vertices && self.on_walk[next as usize] {
                continue;
            }
            self.used_edges |= 1 << e;
            let was = std::mem::replace(&mut self.on_walk[next as usize], true);
            best = best.max(1 + self.extend(next, Some(label)));
            self.on_walk[next as usize] = was;
            self.used_edges &= !(1 << e);
        }
        best
    }
}

fn longest(og: &OrderedGraph, distinct_vertices: bool) -> Result<usize> {
    guard(og)?;
    let n = og.graph.vertex_count();
    let mut w = Walker {
        og,
        used_edges: 0,
        on_walk: vec![false; n],
        distinct_vertices,
    };
    let mut best = 0;
    for v in 0..n as u32 {
        w.on_walk[v as usize] = true;
        best = best.max(w.extend(v, None));
        w.on_walk[v as usize] = false;
    }
    Ok(best)
}

pub fn enumerate_trails_bruteforce(og: &OrderedGraph) -> Result<usize> {
    longest(og, false)
}

pub fn enumerate_paths_bruteforce(og: &OrderedGraph) -> Result<usize> {
    longest(og, true)
}

//! Simple undirected graphs with an edge-indexed adjacency.
//!
//! Vertices are dense `0..n`. Each edge is stored once as `(u, v)` with
//! `u < v`; the adjacency (a CSR layout) lists `(neighbor, edge index)`
//! pairs so that labelings can be indexed by edge.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: u32,
    pub edge: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    incidence: Vec<Incidence>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    /// Edge `i` of the result is the `i`-th input pair, normalized to `u < v`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x as u64,
                        n,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            list.push(e);
        }
        Ok(Self::from_normalized(n, list))
    }

    /// Builds the adjacency for an edge list already known to be simple,
    /// in range and normalized.
    pub(crate) fn from_normalized(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut incidence = vec![
            Incidence {
                neighbor: 0,
                edge: 0
            };
            2 * edges.len()
        ];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incidence[fill[u as usize]] = Incidence {
                neighbor: v,
                edge: i as u32,
            };
            fill[u as usize] += 1;
            incidence[fill[v as usize]] = Incidence {
                neighbor: u,
                edge: i as u32,
            };
            fill[v as usize] += 1;
        }
        Graph {
            n,
            edges,
            offsets,
            incidence,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Self::from_normalized(n, edges)
    }

    /// The cycle `0-1-…-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n as u32 - 1));
        Self::from_normalized(n, edges)
    }

    /// The path on `len + 1` vertices `0-1-…-len`.
    pub fn path(len: usize) -> Self {
        Self::from_normalized(len + 1, (0..len as u32).map(|i| (i, i + 1)).collect())
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_normalized(leaves + 1, (1..=leaves as u32).map(|i| (0, i)).collect())
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).expect("petersen graph is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: usize) -> (u32, u32) {
        self.edges[e]
    }

    #[inline]
    pub fn incident(&self, v: usize) -> &[Incidence] {
        &self.incidence[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// `2m / n`, zero for the empty vertex set.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// The endpoint of edge `e` opposite to `v`.
    #[inline]
    pub fn other_end(&self, e: usize, v: u32) -> u32 {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Structural audit: no loops, no duplicates, endpoints in range, and an
    /// adjacency that mirrors the edge list exactly twice per edge.
    pub fn audit(&self) -> Result<()> {
        let mut seen = HashSet::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u > v {
                return Err(Error::Inconsistent(format!("edge {u}-{v} is not normalized")));
            }
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v as u64,
                    n: self.n,
                });
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        if self.offsets.len() != self.n + 1 || self.incidence.len() != 2 * self.edges.len() {
            return Err(Error::Inconsistent("adjacency size".into()));
        }
        let mut hits = vec![0u8; self.edges.len()];
        for v in 0..self.n {
            for inc in self.incident(v) {
                let e = inc.edge as usize;
                let (a, b) = *self
                    .edges
                    .get(e)
                    .ok_or_else(|| Error::Inconsistent(format!("edge index {e}")))?;
                let ok = (a as usize == v && b == inc.neighbor) || (b as usize == v && a == inc.neighbor);
                if !ok {
                    return Err(Error::Inconsistent(format!("vertex {v} lists edge {e} wrongly")));
                }
                hits[e] += 1;
            }
        }
        if let Some(e) = hits.iter().position(|&h| h != 2) {
            return Err(Error::Inconsistent(format!("edge {e} appears {} times", hits[e])));
        }
        Ok(())
    }

    /// The subgraph induced by `keep`, relabeled to `0..k`. Returns the graph
    /// and, for each new vertex, its original index.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<u32>) {
        assert_eq!(keep.len(), self.n);
        let mut new_index = vec![u32::MAX; self.n];
        let mut original = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_index[v] = original.len() as u32;
                original.push(v as u32);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u as usize] && keep[v as usize])
            .map(|&(u, v)| (new_index[u as usize], new_index[v as usize]))
            .collect();
        (Graph::from_normalized(original.len(), edges), original)
    }

    /// The spanning subgraph formed by the listed edges of `self`, on the same
    /// vertex set. Edge `i` of the result is `self.edge(edges[i])`.
    pub fn edge_subgraph(&self, edges: &[u32]) -> Graph {
        Graph::from_normalized(self.n, edges.iter().map(|&e| self.edges[e as usize]).collect())
    }

    /// Connected component sizes are rarely needed; this returns the
    /// component id of every vertex.
    pub fn components(&self) -> Vec<u32> {
        let mut comp = vec![u32::MAX; self.n];
        let mut stack = Vec::new();
        let mut next = 0u32;
        for s in 0..self.n {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for inc in self.incident(v as usize) {
                    if comp[inc.neighbor as usize] == u32::MAX {
                        comp[inc.neighbor as usize] = next;
                        stack.push(inc.neighbor);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// A materialized rooted `D`-ary tree with `k` levels below the root.
///
/// Vertices are numbered in breadth-first order with the root at 0, so the
/// edge entering vertex `v > 0` has index `v - 1`.
#[derive(Clone, Debug)]
pub struct DaryTree {
    pub graph: Graph,
    pub root: u32,
    pub branching: usize,
    pub depth: usize,
    /// Depth of each vertex (root = 0).
    pub level: Vec<u32>,
}

/// Edge budget used by [`dary_tree`] when callers do not pass their own.
pub const DEFAULT_TREE_EDGE_BUDGET: u64 = 1 << 24;

/// Number of edges of the `D`-ary tree with `k` levels: `D + D^2 + … + D^k`.
pub fn dary_tree_edge_count(branching: usize, depth: usize) -> u128 {
    let mut total = 0u128;
    let mut level = 1u128;
    for _ in 0..depth {
        level = level.saturating_mul(branching as u128);
        total = total.saturating_add(level);
    }
    total
}

pub fn dary_tree(branching: usize, depth: usize, edge_budget: u64) -> Result<DaryTree> {
    if branching == 0 {
        return Err(Error::Config("tree branching must be at least 1".into()));
    }
    let required = dary_tree_edge_count(branching, depth);
    if required > edge_budget as u128 {
        return Err(Error::TreeTooLarge {
            required,
            budget: edge_budget,
        });
    }
    let m = required as usize;
    let mut edges = Vec::with_capacity(m);
    let mut level = Vec::with_capacity(m + 1);
    level.push(0);
    let mut frontier_start = 0usize;
    let mut frontier_end = 1usize;
    for d in 1..=depth as u32 {
        for parent in frontier_start..frontier_end {
            for _ in 0..branching {
                let child = level.len() as u32;
                edges.push((parent as u32, child));
                level.push(d);
            }
        }
        frontier_start = frontier_end;
        frontier_end = level.len();
    }
    Ok(DaryTree {
        graph: Graph::from_normalized(m + 1, edges),
        root: 0,
        branching,
        depth,
        level,
    })
}

//! Budgeted exact search for longest increasing paths.
//!
//! Depth-first search over `(vertex, last label, visited set)` states. Each
//! vertex's incident edges are kept sorted by label so a state only scans the
//! admissible suffix, in ascending label order. Branches are cut with the
//! trail DP run backwards: for every edge and direction we precompute the
//! longest increasing trail that can follow it, an upper bound on any path
//! continuation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::OrderedGraph;
use crate::solvers::walk::{Path, Trail};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OnExhaust {
    Fail,
    ReturnBest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_expansions: u64,
    pub on_exhaust: OnExhaust,
}

impl SearchBudget {
    pub fn new(max_expansions: u64, on_exhaust: OnExhaust) -> Result<Self> {
        if max_expansions == 0 {
            return Err(Error::Config("search budget must be positive".into()));
        }
        Ok(SearchBudget {
            max_expansions,
            on_exhaust,
        })
    }

    pub fn unlimited() -> Self {
        SearchBudget {
            max_expansions: u64::MAX,
            on_exhaust: OnExhaust::Fail,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_expansions: 50_000_000,
            on_exhaust: OnExhaust::ReturnBest,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSearchOutcome {
    pub path: Path,
    /// True iff the search completed, i.e. `path` is a longest increasing path.
    pub exact: bool,
    pub expansions: u64,
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    label: u32,
    to: u32,
    edge: u32,
    /// Longest increasing trail from `to` using labels above `label`.
    residual: u32,
}

/// Constraints for a search rooted at a single vertex.
#[derive(Clone, Copy, Debug, Default)]
pub struct RootLimits<'b> {
    /// Only edges with a label strictly above this may be used.
    pub floor: u32,
    /// Vertices the path may not visit (the root itself is exempt).
    pub blocked: Option<&'b [bool]>,
    /// Stop as soon as a path of this length is found.
    pub max_len: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RootSearch {
    pub path: Trail,
    pub exhausted: bool,
    pub expansions: u64,
}

enum Stop {
    Completed,
    Exhausted,
    ReachedMax,
}

/// Precomputed index over a labelled graph; labels only need to be distinct.
pub struct IncreasingPathSearch<'a> {
    graph: &'a Graph,
    labels: &'a [u32],
    offsets: Vec<usize>,
    arcs: Vec<Arc>,
    start_bound: Vec<u32>,
}

impl<'a> IncreasingPathSearch<'a> {
    pub fn new(graph: &'a Graph, labels: &'a [u32]) -> Self {
        let n = graph.vertex_count();
        let m = graph.edge_count();
        assert_eq!(labels.len(), m);

        let mut order: Vec<u32> = (0..m as u32).collect();
        order.sort_unstable_by_key(|&e| std::cmp::Reverse(labels[e as usize]));
        // residual[e] = [after arriving at edge.0, after arriving at edge.1]
        let mut residual = vec![[0u32; 2]; m];
        let mut from = vec![0u32; n];
        for &e in &order {
            let (u, v) = graph.edge(e as usize);
            let (ru, rv) = (from[u as usize], from[v as usize]);
            residual[e as usize] = [ru, rv];
            from[u as usize] = ru.max(rv + 1);
            from[v as usize] = rv.max(ru + 1);
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut arcs = Vec::with_capacity(2 * m);
        for v in 0..n {
            let start = arcs.len();
            for inc in graph.incident(v) {
                let e = inc.edge as usize;
                let side = usize::from(graph.edge(e).1 == inc.neighbor);
                arcs.push(Arc {
                    label: labels[e],
                    to: inc.neighbor,
                    edge: inc.edge,
                    residual: residual[e][side],
                });
            }
            arcs[start..].sort_unstable_by_key(|a| a.label);
            offsets.push(arcs.len());
        }
        IncreasingPathSearch {
            graph,
            labels,
            offsets,
            arcs,
            start_bound: from,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn labels(&self) -> &[u32] {
        self.labels
    }

    /// Upper bound on the longest increasing trail starting at `v`.
    pub fn start_bound(&self, v: usize) -> usize {
        self.start_bound[v] as usize
    }

    fn admissible(&self, v: usize, floor: u32) -> (usize, usize) {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        let skip = self.arcs[lo..hi].partition_point(|a| a.label <= floor);
        (lo + skip, hi)
    }

    /// Core DFS. `best` carries the incumbent (length and arcs); only strictly
    /// longer paths replace it.
    fn dfs(
        &self,
        root: u32,
        limits: &RootLimits<'_>,
        budget: u64,
        expansions: &mut u64,
        visited: &mut [bool],
        best: &mut (usize, u32, Vec<(u32, u32)>),
    ) -> Stop {
        let mut frames: Vec<(usize, usize)> = Vec::new();
        let mut trail: Vec<(u32, u32)> = Vec::new();
        visited[root as usize] = true;
        frames.push(self.admissible(root as usize, limits.floor));
        let blocked = |v: u32| limits.blocked.is_some_and(|b| b[v as usize]);
        let outcome = loop {
            let Some(top) = frames.last_mut() else {
                break Stop::Completed;
            };
            if top.0 == top.1 {
                frames.pop();
                if let Some((_, to)) = trail.pop() {
                    visited[to as usize] = false;
                }
                continue;
            }
            let arc = self.arcs[top.0];
            top.0 += 1;
            if visited[arc.to as usize] || blocked(arc.to) {
                continue;
            }
            let len = trail.len() + 1;
            if len + arc.residual as usize <= best.0 {
                continue;
            }
            if *expansions >= budget {
                break Stop::Exhausted;
            }
            *expansions += 1;
            trail.push((arc.edge, arc.to));
            visited[arc.to as usize] = true;
            if len > best.0 {
                *best = (len, root, trail.clone());
            }
            if limits.max_len.is_some_and(|cap| len >= cap) {
                break Stop::ReachedMax;
            }
            frames.push(self.admissible(arc.to as usize, arc.label));
        };
        visited[root as usize] = false;
        for (_, to) in trail {
            visited[to as usize] = false;
        }
        outcome
    }

    fn materialize(&self, root: u32, arcs: &[(u32, u32)]) -> Trail {
        if arcs.is_empty() {
            return Trail::default();
        }
        let mut t = Trail::single_vertex(root);
        for &(e, to) in arcs {
            t.push(e, self.labels[e as usize], to);
        }
        t
    }

    /// Longest increasing path starting at `root` (within `budget` expansions).
    pub fn from_root(&self, root: u32, limits: &RootLimits<'_>, budget: u64) -> RootSearch {
        let mut visited = vec![false; self.graph.vertex_count()];
        let mut expansions = 0;
        let mut best = (0, root, Vec::new());
        let stop = self.dfs(root, limits, budget, &mut expansions, &mut visited, &mut best);
        RootSearch {
            path: self.materialize(root, &best.2),
            exhausted: matches!(stop, Stop::Exhausted),
            expansions,
        }
    }

    /// Longest increasing path anywhere in the graph.
    pub fn longest(&self, budget: SearchBudget) -> Result<PathSearchOutcome> {
        let n = self.graph.vertex_count();
        let mut roots: Vec<u32> = (0..n as u32).collect();
        roots.sort_by_key(|&v| (std::cmp::Reverse(self.start_bound[v as usize]), v));
        let mut visited = vec![false; n];
        let mut expansions = 0;
        let mut best = (0usize, 0u32, Vec::new());
        let mut exact = true;
        for &r in &roots {
            if self.start_bound[r as usize] as usize <= best.0 {
                break;
            }
            let limits = RootLimits::default();
            let stop = self.dfs(r, &limits, budget.max_expansions, &mut expansions, &mut visited, &mut best);
            if matches!(stop, Stop::Exhausted) {
                exact = false;
                break;
            }
        }
        if !exact && budget.on_exhaust == OnExhaust::Fail {
            return Err(Error::BudgetExhausted {
                expansions,
                best: best.0,
            });
        }
        Ok(PathSearchOutcome {
            path: self.materialize(best.1, &best.2),
            exact,
            expansions,
        })
    }
}

pub fn longest_increasing_path_exact(og: &OrderedGraph, budget: SearchBudget) -> Result<PathSearchOutcome> {
    IncreasingPathSearch::new(&og.graph, og.labels()).longest(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::EdgeOrdering;
    use crate::solvers::walk::validate_path;

    #[test]
    fn triangle_path_is_two() {
        let og = OrderedGraph::with_identity(Graph::complete(3));
        let out = longest_increasing_path_exact(&og, SearchBudget::unlimited()).unwrap();
        assert!(out.exact);
        assert_eq!(out.path.len(), 2);
        validate_path(&og, &out.path).unwrap();
    }

    #[test]
    fn star_paths_have_two_edges() {
        for labels in [vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]] {
            let og = OrderedGraph::new(Graph::star(3), EdgeOrdering::new(labels).unwrap()).unwrap();
            let out = longest_increasing_path_exact(&og, SearchBudget::unlimited()).unwrap();
            assert_eq!(out.path.len(), 2);
            validate_path(&og, &out.path).unwrap();
        }
    }

    #[test]
    fn budget_policies() {
        let og = OrderedGraph::random(Graph::complete(9), &crate::Seed::new(2));
        let tight = SearchBudget::new(3, OnExhaust::ReturnBest).unwrap();
        let out = longest_increasing_path_exact(&og, tight).unwrap();
        assert!(!out.exact);
        assert!(out.path.len() >= 1);
        validate_path(&og, &out.path).unwrap();
        let fail = SearchBudget::new(3, OnExhaust::Fail).unwrap();
        assert!(matches!(
            longest_increasing_path_exact(&og, fail),
            Err(Error::BudgetExhausted { .. })
        ));
        assert!(SearchBudget::new(0, OnExhaust::Fail).is_err());
    }

    #[test]
    fn root_limits_respect_floor_and_blocking() {
        let og = OrderedGraph::with_identity(Graph::path(4));
        let s = IncreasingPathSearch::new(&og.graph, og.labels());
        let r = s.from_root(0, &RootLimits::default(), u64::MAX);
        assert_eq!(r.path.len(), 4);
        let r = s.from_root(1, &RootLimits { floor: 2, ..Default::default() }, u64::MAX);
        assert_eq!(r.path.len(), 0);
        let r = s.from_root(1, &RootLimits { floor: 1, ..Default::default() }, u64::MAX);
        assert_eq!(r.path.len(), 3);
        let blocked = [false, false, false, true, false];
        let r = s.from_root(0, &RootLimits { blocked: Some(&blocked), ..Default::default() }, u64::MAX);
        assert_eq!(r.path.len(), 2);
        let r = s.from_root(0, &RootLimits { max_len: Some(2), ..Default::default() }, u64::MAX);
        assert_eq!(r.path.len(), 2);
    }
}

//! Large high-girth, high-minimum-degree core of a graph.
//!
//! Phase 1 destroys every cycle shorter than the girth target: a bounded BFS
//! from each vertex looks for a closing edge, and one vertex of the cycle it
//! exposes (the one of largest current degree, lowest index on ties) is
//! deleted. The search from a vertex repeats until its ball is cycle-free.
//! Phase 2 seeds a deleted set with the phase-1 vertices plus every vertex of
//! original degree at most the degree floor, then keeps absorbing the
//! lowest-index remaining vertex that has at least `eps * 2m/n` neighbors in
//! the deleted set. The survivors induce the core.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruneConfig {
    /// Required girth of the core; cycles of length `< girth_target` are removed.
    pub girth_target: usize,
    pub eps: f64,
    /// Vertices of original degree at most this are discarded up front.
    /// Defaults to `(1 - eps) * 2m/n`.
    pub degree_floor: Option<f64>,
}

impl PruneConfig {
    pub fn new(girth_target: usize, eps: f64) -> Result<Self> {
        let cfg = PruneConfig {
            girth_target,
            eps,
            degree_floor: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_degree_floor(mut self, floor: f64) -> Self {
        self.degree_floor = Some(floor);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.girth_target < 3 {
            return Err(Error::Config("girth target must be at least 3".into()));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config(format!("eps = {} must lie in (0, 1)", self.eps)));
        }
        Ok(())
    }

    pub fn floor_for(&self, graph: &Graph) -> f64 {
        self.degree_floor
            .unwrap_or((1.0 - self.eps) * graph.average_degree())
    }

    pub fn absorb_threshold(&self, graph: &Graph) -> f64 {
        self.eps * graph.average_degree()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruneReport {
    /// Vertices deleted to break short cycles, in deletion order.
    pub deleted_cycle_vertices: Vec<u32>,
    /// Vertices of original degree at most the floor (not already deleted).
    pub deleted_low_degree: Vec<u32>,
    /// Vertices absorbed by the deleted set, in order.
    pub absorbed_sequence: Vec<u32>,
    /// Number of absorption steps.
    pub rounds: usize,
    pub retained: usize,
    pub retained_fraction: f64,
    pub degree_floor: f64,
    pub absorb_threshold: f64,
    /// Minimum degree of the core, `None` when the core is empty.
    pub core_min_degree: Option<usize>,
}

impl PruneReport {
    /// The guaranteed lower bound on the core's minimum degree.
    pub fn min_degree_bound(&self) -> f64 {
        self.degree_floor - self.absorb_threshold
    }
}

#[derive(Clone, Debug)]
pub struct HighGirthCore {
    /// Membership mask over the input graph's vertices.
    pub keep: Vec<bool>,
    pub report: PruneReport,
}

impl HighGirthCore {
    pub fn vertices(&self) -> Vec<u32> {
        (0..self.keep.len() as u32).filter(|&v| self.keep[v as usize]).collect()
    }

    /// The core as an induced subgraph relabeled to `0..k`, with the map
    /// back to original vertex ids.
    pub fn induced(&self, graph: &Graph) -> (Graph, Vec<u32>) {
        graph.induced(&self.keep)
    }

    pub fn is_empty(&self) -> bool {
        self.report.retained == 0
    }
}

/// Scratch space for repeated radius-limited BFS runs.
struct Ball {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    parent: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

impl Ball {
    fn new(n: usize) -> Self {
        Ball {
            stamp: vec![0; n],
            dist: vec![0; n],
            parent: vec![u32::MAX; n],
            epoch: 0,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn seen(&self, v: u32) -> bool {
        self.stamp[v as usize] == self.epoch
    }

    /// Finds a cycle of length `< girth_target` through the BFS ball of
    /// `root` among alive vertices, returning its vertices.
    fn short_cycle(&mut self, graph: &Graph, alive: &[bool], root: u32, girth_target: usize) -> Option<Vec<u32>> {
        let radius = ((girth_target - 1) / 2) as u32;
        self.epoch += 1;
        self.queue.clear();
        self.stamp[root as usize] = self.epoch;
        self.dist[root as usize] = 0;
        self.parent[root as usize] = u32::MAX;
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            let dx = self.dist[x as usize];
            for inc in graph.incident(x as usize) {
                let y = inc.neighbor;
                if !alive[y as usize] {
                    continue;
                }
                if !self.seen(y) {
                    if dx < radius {
                        self.stamp[y as usize] = self.epoch;
                        self.dist[y as usize] = dx + 1;
                        self.parent[y as usize] = x;
                        self.queue.push(y);
                    }
                } else if self.parent[x as usize] != y
                    && ((dx + self.dist[y as usize] + 1) as usize) < girth_target
                {
                    return Some(self.cycle_through(x, y));
                }
            }
        }
        None
    }

    /// Closes the tree paths from `x` and `y` at their lowest common ancestor.
    fn cycle_through(&self, mut x: u32, mut y: u32) -> Vec<u32> {
        let mut left = vec![x];
        let mut right = vec![y];
        while self.dist[x as usize] > self.dist[y as usize] {
            x = self.parent[x as usize];
            left.push(x);
        }
        while self.dist[y as usize] > self.dist[x as usize] {
            y = self.parent[y as usize];
            right.push(y);
        }
        while x != y {
            x = self.parent[x as usize];
            y = self.parent[y as usize];
            left.push(x);
            right.push(y);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}

pub fn extract_high_girth_core(graph: &Graph, cfg: &PruneConfig) -> HighGirthCore {
    let n = graph.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut deleted_cycle_vertices = Vec::new();

    let mut ball = Ball::new(n);
    for v in 0..n as u32 {
        while alive[v as usize] {
            let Some(cycle) = ball.short_cycle(graph, &alive, v, cfg.girth_target) else {
                break;
            };
            let victim = *cycle
                .iter()
                .max_by_key(|&&c| (degree[c as usize], Reverse(c)))
                .expect("cycles are nonempty");
            alive[victim as usize] = false;
            for inc in graph.incident(victim as usize) {
                degree[inc.neighbor as usize] -= 1;
            }
            deleted_cycle_vertices.push(victim);
        }
    }

    let floor = cfg.floor_for(graph);
    let threshold = cfg.absorb_threshold(graph);
    let mut deleted_low_degree = Vec::new();
    for v in 0..n {
        if alive[v] && graph.degree(v) as f64 <= floor {
            deleted_low_degree.push(v as u32);
        }
    }
    for &v in &deleted_low_degree {
        alive[v as usize] = false;
    }

    let mut into_deleted = vec![0usize; n];
    for v in 0..n {
        if alive[v] {
            into_deleted[v] = graph
                .incident(v)
                .iter()
                .filter(|inc| !alive[inc.neighbor as usize])
                .count();
        }
    }
    let mut queued = vec![false; n];
    let mut heap = BinaryHeap::new();
    for v in 0..n {
        if alive[v] && into_deleted[v] as f64 >= threshold {
            queued[v] = true;
            heap.push(Reverse(v as u32));
        }
    }
    let mut absorbed_sequence = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        alive[v as usize] = false;
        absorbed_sequence.push(v);
        for inc in graph.incident(v as usize) {
            let w = inc.neighbor as usize;
            if alive[w] {
                into_deleted[w] += 1;
                if !queued[w] && into_deleted[w] as f64 >= threshold {
                    queued[w] = true;
                    heap.push(Reverse(w as u32));
                }
            }
        }
    }

    let retained = alive.iter().filter(|&&a| a).count();
    let core_min_degree = (0..n)
        .filter(|&v| alive[v])
        .map(|v| graph.incident(v).iter().filter(|inc| alive[inc.neighbor as usize]).count())
        .min();
    let report = PruneReport {
        rounds: absorbed_sequence.len(),
        deleted_cycle_vertices,
        deleted_low_degree,
        absorbed_sequence,
        retained,
        retained_fraction: if n == 0 { 0.0 } else { retained as f64 / n as f64 },
        degree_floor: floor,
        absorb_threshold: threshold,
        core_min_degree,
    };
    let core = HighGirthCore { keep: alive, report };

    #[cfg(debug_assertions)]
    {
        let (h, _) = core.induced(graph);
        debug_assert!(super::girth::girth_below(&h, cfg.girth_target).is_none());
        if let Some(d) = core.report.core_min_degree {
            debug_assert!(d as f64 >= core.report.min_degree_bound());
        }
    }
    core
}

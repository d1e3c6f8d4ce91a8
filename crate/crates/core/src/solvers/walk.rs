//! Certified increasing walks and their validators.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::ordering::OrderedGraph;

/// An increasing trail: `vertices[i]` and `vertices[i + 1]` are joined by
/// `edges[i]`, whose label is `labels[i]`. The empty trail has no vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trail {
    pub vertices: Vec<u32>,
    pub edges: Vec<u32>,
    pub labels: Vec<u32>,
}

/// A path is a trail without repeated vertices; [`validate_path`] enforces
/// the extra condition.
pub type Path = Trail;

impl Trail {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> Option<u32> {
        self.vertices.first().copied()
    }

    pub fn end(&self) -> Option<u32> {
        self.vertices.last().copied()
    }

    pub fn last_label(&self) -> Option<u32> {
        self.labels.last().copied()
    }

    /// Appends edge `edge` (with `label`) leading to `to`.
    pub(crate) fn push(&mut self, edge: u32, label: u32, to: u32) {
        self.edges.push(edge);
        self.labels.push(label);
        self.vertices.push(to);
    }

    pub(crate) fn single_vertex(v: u32) -> Self {
        Trail {
            vertices: vec![v],
            edges: Vec::new(),
            labels: Vec::new(),
        }
    }
}

/// Why a walk failed validation. `step` is the 0-based index of the offending edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum WalkDefect {
    #[error("vertex, edge and label sequences have inconsistent lengths")]
    Shape,
    #[error("step {step}: edge index out of range")]
    EdgeOutOfRange { step: usize },
    #[error("step {step}: edge does not join the consecutive vertices")]
    NotIncident { step: usize },
    #[error("step {step}: recorded label differs from the ordering")]
    LabelMismatch { step: usize },
    #[error("step {step}: edge already used")]
    RepeatedEdge { step: usize },
    #[error("step {step}: label does not increase")]
    NotIncreasing { step: usize },
    #[error("vertex at position {position} repeats")]
    RepeatedVertex { position: usize },
}

/// Checks a walk against an arbitrary labeling (labels need not be a
/// bijection onto `1..=m`, only distinct).
pub fn check_walk(
    graph: &Graph,
    labels: &[u32],
    walk: &Trail,
    distinct_vertices: bool,
) -> Result<(), WalkDefect> {
    let l = walk.edges.len();
    if walk.labels.len() != l {
        return Err(WalkDefect::Shape);
    }
    if l == 0 {
        return if walk.vertices.len() <= 1 {
            Ok(())
        } else {
            Err(WalkDefect::Shape)
        };
    }
    if walk.vertices.len() != l + 1 {
        return Err(WalkDefect::Shape);
    }
    let mut used = HashSet::with_capacity(l);
    for step in 0..l {
        let e = walk.edges[step] as usize;
        if e >= graph.edge_count() {
            return Err(WalkDefect::EdgeOutOfRange { step });
        }
        let (a, b) = graph.edge(e);
        let (x, y) = (walk.vertices[step], walk.vertices[step + 1]);
        if !((a == x && b == y) || (a == y && b == x)) {
            return Err(WalkDefect::NotIncident { step });
        }
        if labels[e] != walk.labels[step] {
            return Err(WalkDefect::LabelMismatch { step });
        }
        if !used.insert(e) {
            return Err(WalkDefect::RepeatedEdge { step });
        }
        if step > 0 && walk.labels[step] <= walk.labels[step - 1] {
            return Err(WalkDefect::NotIncreasing { step });
        }
    }
    if distinct_vertices {
        let mut seen = HashSet::with_capacity(walk.vertices.len());
        for (position, v) in walk.vertices.iter().enumerate() {
            if !seen.insert(*v) {
                return Err(WalkDefect::RepeatedVertex { position });
            }
        }
    }
    Ok(())
}

pub fn validate_trail(og: &OrderedGraph, trail: &Trail) -> Result<(), WalkDefect> {
    check_walk(&og.graph, og.labels(), trail, false)
}

pub fn validate_path(og: &OrderedGraph, path: &Path) -> Result<(), WalkDefect> {
    check_walk(&og.graph, og.labels(), path, true)
}

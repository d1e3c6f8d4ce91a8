//! Edge orderings: bijections from edges onto `1..=m`.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::Seed;

/// `label[e]` is the position of edge `e` in the ordering, in `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeOrdering {
    label: Vec<u32>,
}

impl EdgeOrdering {
    pub fn new(label: Vec<u32>) -> Result<Self> {
        let m = label.len();
        let mut seen = vec![false; m];
        for &l in &label {
            let ok = l >= 1 && (l as usize) <= m && !seen[l as usize - 1];
            if !ok {
                return Err(Error::NotABijection(m));
            }
            seen[l as usize - 1] = true;
        }
        Ok(EdgeOrdering { label })
    }

    /// The ordering in which edge `order[i]` receives label `i + 1`.
    pub fn from_sequence(order: &[u32]) -> Result<Self> {
        let m = order.len();
        let mut label = vec![0u32; m];
        for (i, &e) in order.iter().enumerate() {
            let slot = label
                .get_mut(e as usize)
                .ok_or(Error::NotABijection(m))?;
            if *slot != 0 {
                return Err(Error::NotABijection(m));
            }
            *slot = i as u32 + 1;
        }
        Ok(EdgeOrdering { label })
    }

    pub fn identity(m: usize) -> Self {
        EdgeOrdering {
            label: (1..=m as u32).collect(),
        }
    }

    pub fn labels(&self) -> &[u32] {
        &self.label
    }

    #[inline]
    pub fn label(&self, e: usize) -> u32 {
        self.label[e]
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    /// Edge indices sorted by label: `result[l - 1]` carries label `l`.
    pub fn edges_by_label(&self) -> Vec<u32> {
        let mut order = vec![0u32; self.label.len()];
        for (e, &l) in self.label.iter().enumerate() {
            order[l as usize - 1] = e as u32;
        }
        order
    }
}

/// Real edge labels in `[0, 1]`, as in the continuous model of a random
/// ordering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealLabeling {
    x: Vec<f64>,
}

impl RealLabeling {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some(bad) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Domain(format!("real label {bad} outside [0, 1]")));
        }
        Ok(RealLabeling { x })
    }

    pub fn uniform(m: usize, seed: &Seed) -> Self {
        let mut rng = seed.rng();
        RealLabeling {
            x: (0..m).map(|_| rng.random::<f64>()).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }
}

/// Rank transform of real labels. Ties are broken by edge index.
pub fn ordering_from_reals(labels: &RealLabeling) -> EdgeOrdering {
    let x = &labels.x;
    let mut idx: Vec<u32> = (0..x.len() as u32).collect();
    idx.sort_by(|&a, &b| x[a as usize].total_cmp(&x[b as usize]).then(a.cmp(&b)));
    EdgeOrdering::from_sequence(&idx).expect("sorted indices form a permutation")
}

/// A uniformly random ordering (Fisher–Yates shuffle of `1..=m`).
pub fn random_ordering(graph: &Graph, seed: &Seed) -> EdgeOrdering {
    random_permutation_labels(graph.edge_count(), seed)
}

pub(crate) fn random_permutation_labels(m: usize, seed: &Seed) -> EdgeOrdering {
    let mut label: Vec<u32> = (1..=m as u32).collect();
    label.shuffle(&mut seed.rng());
    EdgeOrdering { label }
}

/// A graph together with an edge ordering of the same length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedGraph {
    pub graph: Graph,
    pub ordering: EdgeOrdering,
}

impl OrderedGraph {
    pub fn new(graph: Graph, ordering: EdgeOrdering) -> Result<Self> {
        if ordering.len() != graph.edge_count() {
            return Err(Error::Config(format!(
                "ordering has {} labels for {} edges",
                ordering.len(),
                graph.edge_count()
            )));
        }
        Ok(OrderedGraph { graph, ordering })
    }

    pub fn random(graph: Graph, seed: &Seed) -> Self {
        let ordering = random_ordering(&graph, seed);
        OrderedGraph { graph, ordering }
    }

    /// Labels follow edge index: edge `i` gets label `i + 1`.
    pub fn with_identity(graph: Graph) -> Self {
        let ordering = EdgeOrdering::identity(graph.edge_count());
        OrderedGraph { graph, ordering }
    }

    pub fn labels(&self) -> &[u32] {
        self.ordering.labels()
    }
}

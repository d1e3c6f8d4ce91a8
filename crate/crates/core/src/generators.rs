//! Random graph models `G(n, p)` and `G(n, m)`.
//!
//! Both generators enumerate the `C(n, 2)` unordered pairs through a linear
//! index (row-major over `u < v`) and emit edges in increasing index order,
//! so the resulting edge list is lexicographically sorted.

use std::collections::HashSet;

use rand::Rng as _;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::Seed;

pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Converts increasing linear pair indices into `(u, v)` pairs.
struct PairCursor {
    n: u64,
    row: u64,
    row_start: u64,
}

impl PairCursor {
    fn new(n: usize) -> Self {
        PairCursor {
            n: n as u64,
            row: 0,
            row_start: 0,
        }
    }

    /// `idx` must not decrease between calls.
    fn pair(&mut self, idx: u64) -> (u32, u32) {
        while idx >= self.row_start + (self.n - 1 - self.row) {
            self.row_start += self.n - 1 - self.row;
            self.row += 1;
        }
        let v = self.row + 1 + (idx - self.row_start);
        (self.row as u32, v as u32)
    }
}

/// Erdős–Rényi `G(n, p)`. Uses geometric skipping between successive
/// edges, so the cost is `O(n + m)` rather than `O(n^2)`.
pub fn gen_gnp(n: usize, p: f64, seed: &Seed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let total = pair_count(n);
    let skip = Geometric::new(p).map_err(|_| Error::InvalidProbability(p))?;
    let mut rng = seed.rng();
    let mut cursor = PairCursor::new(n);
    let mut edges = Vec::with_capacity((total as f64 * p * 1.05) as usize + 16);
    let mut next: u64 = 0;
    loop {
        let gap = skip.sample(&mut rng);
        next = match next.checked_add(gap) {
            Some(x) if x < total => x,
            _ => break,
        };
        edges.push(cursor.pair(next));
        next += 1;
    }
    Ok(Graph::from_normalized(n, edges))
}

/// Uniform `G(n, m)`: an exactly uniform `m`-subset of the pairs, drawn with
/// Floyd's sampling algorithm (on the complement when `m > C(n,2)/2`).
pub fn gen_gnm(n: usize, m: u64, seed: &Seed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    let total = pair_count(n);
    if m > total {
        return Err(Error::TooManyEdges {
            requested: m,
            max: total,
        });
    }
    let mut rng = seed.rng();
    let complement = m > total / 2;
    let k = if complement { total - m } else { m };
    let mut chosen: HashSet<u64> = HashSet::with_capacity(k as usize);
    for j in total - k..total {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut indices: Vec<u64> = if complement {
        (0..total).filter(|i| !chosen.contains(i)).collect()
    } else {
        chosen.into_iter().collect()
    };
    indices.sort_unstable();
    let mut cursor = PairCursor::new(n);
    let edges = indices.into_iter().map(|i| cursor.pair(i)).collect();
    Ok(Graph::from_normalized(n, edges))
}

//! Worst case over edge orderings: `m*(G)` (trails) and `m(G)` (paths).
//!
//! Orderings are written as sequences: `seq[i]` is the edge carrying label
//! `i + 1`. The permutation space is split by `seq[0]`, each part walked in
//! lexicographic order with an iterative next-permutation step. For trails
//! the DP state after every prefix is cached, so a step only rescans the
//! suffix that changed.

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::{random_ordering, EdgeOrdering};
use crate::seed::{stream, Seed};
use crate::solvers::path_search::{IncreasingPathSearch, RootLimits};
use crate::solvers::trail_dp::trail_length_for_order;

pub const TRAIL_EXHAUSTIVE_LIMIT: usize = 10;
pub const PATH_EXHAUSTIVE_LIMIT: usize = 9;
pub const CHECKPOINT_INTERVAL: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCaseResult {
    pub value: usize,
    pub witness_ordering: EdgeOrdering,
    pub orderings_examined: u64,
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    Trail,
    Path,
}

#[derive(Clone, Debug, Default)]
pub struct ExhaustiveOptions {
    /// Fix label 1 on edge 0. Valid only when every edge lies in one
    /// automorphism orbit, which is checked for complete graphs only.
    pub symmetry_reduction: bool,
    /// JSON progress file; resumed from if it already exists.
    pub checkpoint: Option<PathBuf>,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

/// Average degree `2m/n`, a lower bound on `m*(G)`.
pub fn gk_bound(graph: &Graph) -> f64 {
    graph.average_degree()
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Advances `s` to the next lexicographic permutation and returns the
/// first index that changed, or `None` after the last one.
fn next_permutation(s: &mut [u32]) -> Option<usize> {
    if s.len() < 2 {
        return None;
    }
    let mut i = s.len() - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = s.len() - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    Some(i - 1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Partition {
    first: u32,
    /// Next sequence to score; `None` once the part is finished.
    next: Option<Vec<u32>>,
    examined: u64,
    best: Option<(usize, Vec<u32>)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    objective: Objective,
    n: usize,
    edges: Vec<(u32, u32)>,
    symmetry_reduction: bool,
    partitions: Vec<Partition>,
}

impl Checkpoint {
    fn fresh(graph: &Graph, objective: Objective, symmetry: bool) -> Self {
        let m = graph.edge_count() as u32;
        let firsts: Vec<u32> = if symmetry { vec![0] } else { (0..m).collect() };
        let partitions = firsts
            .into_iter()
            .map(|first| {
                let mut seq = vec![first];
                seq.extend((0..m).filter(|&e| e != first));
                Partition {
                    first,
                    next: if m == 0 { None } else { Some(seq) },
                    examined: 0,
                    best: None,
                }
            })
            .collect();
        Checkpoint {
            objective,
            n: graph.vertex_count(),
            edges: graph.edges().to_vec(),
            symmetry_reduction: symmetry,
            partitions,
        }
    }

    fn matches(&self, graph: &Graph, objective: Objective, symmetry: bool) -> bool {
        self.objective == objective
            && self.n == graph.vertex_count()
            && self.edges == graph.edges()
            && self.symmetry_reduction == symmetry
    }
}

fn load_checkpoint(path: &FsPath) -> Result<Option<Checkpoint>> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(Some(serde_json::from_str(&text)?)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::io(path, e)),
    }
}

fn save_checkpoint(path: &FsPath, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec(cp)?).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Scores sequences, reusing work on the unchanged prefix.
trait Scorer {
    fn score(&mut self, seq: &[u32], changed_from: usize) -> usize;
}

struct TrailScorer<'g> {
    graph: &'g Graph,
    n: usize,
    /// DP row after each prefix length, `(m + 1) * n` entries.
    rows: Vec<u8>,
    longest: Vec<u8>,
}

impl<'g> TrailScorer<'g> {
    fn new(graph: &'g Graph) -> Self {
        let (n, m) = (graph.vertex_count(), graph.edge_count());
        TrailScorer {
            graph,
            n,
            rows: vec![0; (m + 1) * n],
            longest: vec![0; m + 1],
        }
    }
}

impl Scorer for TrailScorer<'_> {
    fn score(&mut self, seq: &[u32], changed_from: usize) -> usize {
        let n = self.n;
        for i in changed_from..seq.len() {
            let (head, tail) = self.rows.split_at_mut((i + 1) * n);
            let prev = &head[i * n..];
            let next = &mut tail[..n];
            next.copy_from_slice(prev);
            let (u, v) = self.graph.edge(seq[i] as usize);
            let (lu, lv) = (prev[u as usize], prev[v as usize]);
            next[u as usize] = lu.max(lv + 1);
            next[v as usize] = lv.max(lu + 1);
            self.longest[i + 1] = self.longest[i].max(lu.max(lv) + 1);
        }
        self.longest[seq.len()] as usize
    }
}

struct PathScorer<'g> {
    graph: &'g Graph,
    labels: Vec<u32>,
}

impl Scorer for PathScorer<'_> {
    fn score(&mut self, seq: &[u32], _changed_from: usize) -> usize {
        for (i, &e) in seq.iter().enumerate() {
            self.labels[e as usize] = i as u32 + 1;
        }
        let search = IncreasingPathSearch::new(self.graph, &self.labels);
        let limits = RootLimits::default();
        (0..self.graph.vertex_count() as u32)
            .map(|r| search.from_root(r, &limits, u64::MAX).path.len())
            .max()
            .unwrap_or(0)
    }
}

/// Walks one part until it ends or `quota` orderings were scored. Ties keep
/// the lexicographically first minimizer.
fn advance(part: &mut Partition, scorer: &mut dyn Scorer, quota: u64) {
    let Some(mut seq) = part.next.take() else {
        return;
    };
    let mut changed = 0;
    let mut done = 0;
    loop {
        let value = scorer.score(&seq, changed);
        part.examined += 1;
        done += 1;
        if part.best.as_ref().is_none_or(|(b, _)| value < *b) {
            part.best = Some((value, seq.clone()));
        }
        match next_permutation(&mut seq[1..]) {
            None => return,
            Some(j) => changed = j + 1,
        }
        if done >= quota {
            part.next = Some(seq);
            return;
        }
    }
}

fn exhaustive(graph: &Graph, objective: Objective, opts: &ExhaustiveOptions) -> Result<WorstCaseResult> {
    let m = graph.edge_count();
    let limit = match objective {
        Objective::Trail => TRAIL_EXHAUSTIVE_LIMIT,
        Objective::Path => PATH_EXHAUSTIVE_LIMIT,
    };
    if m > limit {
        return Err(Error::SizeGuard { edges: m, limit });
    }
    let n = graph.vertex_count();
    if opts.symmetry_reduction && (n < 2 || m != n * (n - 1) / 2) {
        return Err(Error::Domain(
            "symmetry reduction is only available for complete graphs".into(),
        ));
    }
    if m == 0 {
        return Ok(WorstCaseResult {
            value: 0,
            witness_ordering: EdgeOrdering::identity(0),
            orderings_examined: 1,
            exhaustive: true,
        });
    }

    let mut cp = match &opts.checkpoint {
        Some(path) => match load_checkpoint(path)? {
            Some(cp) if cp.matches(graph, objective, opts.symmetry_reduction) => cp,
            Some(_) => {
                return Err(Error::Config(format!(
                    "checkpoint {} belongs to a different run",
                    path.display()
                )))
            }
            None => Checkpoint::fresh(graph, objective, opts.symmetry_reduction),
        },
        None => Checkpoint::fresh(graph, objective, opts.symmetry_reduction),
    };

    let shared = Mutex::new(cp.clone());
    let quota = if opts.checkpoint.is_some() {
        CHECKPOINT_INTERVAL
    } else {
        u64::MAX
    };
    let work = |(idx, mut part): (usize, Partition)| -> Result<Partition> {
        let mut scorer: Box<dyn Scorer> = match objective {
            Objective::Trail => Box::new(TrailScorer::new(graph)),
            Objective::Path => Box::new(PathScorer {
                graph,
                labels: vec![0; m],
            }),
        };
        while part.next.is_some() {
            advance(&mut part, scorer.as_mut(), quota);
            if let Some(path) = &opts.checkpoint {
                let mut guard = shared.lock().expect("checkpoint lock");
                guard.partitions[idx] = part.clone();
                save_checkpoint(path, &guard)?;
            }
        }
        Ok(part)
    };
    let parts: Vec<(usize, Partition)> = cp.partitions.drain(..).enumerate().collect();
    let run = || parts.into_par_iter().map(work).collect::<Result<Vec<_>>>();
    let finished = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let examined = finished.iter().map(|p| p.examined).sum();
    let (value, seq) = finished
        .into_iter()
        .filter_map(|p| p.best)
        .min_by_key(|(v, _)| *v)
        .expect("at least one ordering");
    debug_assert!(
        examined == if opts.symmetry_reduction { factorial(m - 1) } else { factorial(m) }
    );
    Ok(WorstCaseResult {
        value,
        witness_ordering: EdgeOrdering::from_sequence(&seq)?,
        orderings_examined: examined,
        exhaustive: true,
    })
}

/// `m*(G)`: the minimum over all `m!` orderings of the longest increasing
/// trail. Limited to 10 edges.
pub fn m_star_exhaustive(graph: &Graph) -> Result<WorstCaseResult> {
    exhaustive(graph, Objective::Trail, &ExhaustiveOptions::default())
}

pub fn m_star_exhaustive_with(graph: &Graph, opts: &ExhaustiveOptions) -> Result<WorstCaseResult> {
    exhaustive(graph, Objective::Trail, opts)
}

/// `m(G)`: the minimum over all orderings of the longest increasing path.
/// Limited to 9 edges.
pub fn m_path_exhaustive(graph: &Graph) -> Result<WorstCaseResult> {
    exhaustive(graph, Objective::Path, &ExhaustiveOptions::default())
}

pub fn m_path_exhaustive_with(graph: &Graph, opts: &ExhaustiveOptions) -> Result<WorstCaseResult> {
    exhaustive(graph, Objective::Path, opts)
}

/// Minimum trail length over `trials` random orderings: an upper bound on
/// `m*(G)`, never flagged exhaustive.
pub fn m_star_sampled_upper(graph: &Graph, trials: u64, seed: &Seed) -> WorstCaseResult {
    let base = seed.derive(stream::WORST_CASE);
    let (value, trial) = (0..trials.max(1))
        .into_par_iter()
        .map_init(Vec::new, |scratch, t| {
            let ord = random_ordering(graph, &base.derive(t));
            (trail_length_for_order(graph, &ord.edges_by_label(), scratch), t)
        })
        .min()
        .expect("at least one trial");
    WorstCaseResult {
        value,
        witness_ordering: random_ordering(graph, &base.derive(trial)),
        orderings_examined: trials.max(1),
        exhaustive: false,
    }
}

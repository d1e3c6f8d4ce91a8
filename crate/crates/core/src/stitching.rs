//! Round-based construction of long increasing trails (or paths).
//!
//! The labels `1..=t(a+b)` are cut into consecutive blocks
//! `I_1, J_1, ..., I_t, J_t` with `|I_i| = a` and `|J_i| = b`. Round `i`
//! looks only at the edges labelled in `J_i`: it extracts a high-girth core
//! and searches it for a long increasing path. That path is glued to the end
//! of the current trail by a connector edge labelled in `I_i`, which sits
//! below every `J_i` label and above everything placed so far.
//!
//! The set `U_i` of good starting points is never built in full. Only the
//! far endpoints of the connector candidates are tested, by running the
//! bounded search from them; the reported size of `U_i` is an estimate from
//! a small stride sample of the core.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::OrderedGraph;
use crate::solvers::path_search::{IncreasingPathSearch, RootLimits};
use crate::solvers::walk::Trail;
use crate::subgraph::{extract_high_girth_core, PruneConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Trail,
    Path,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleConfig {
    /// Number of rounds.
    pub t: usize,
    /// Size of each connector block `I_i`.
    pub a: usize,
    /// Size of each growth block `J_i`.
    pub b: usize,
    /// Slack in the per-round target `s = ceil((1 - eps/2) e d)`.
    pub eps: f64,
    pub mode: Mode,
    /// Expansion budget of every single-root search.
    pub search_budget: u64,
    /// Fixed per-round target, overriding the degree-based one.
    pub tree_depth_target: Option<usize>,
    /// Girth target of the per-round core.
    pub girth_target: usize,
    /// `eps` handed to the core extraction.
    pub prune_eps: f64,
    /// A round fails at the core stage below either floor.
    pub min_retained_fraction: f64,
    pub min_core_degree: usize,
    /// A round fails at the reachable-set stage when the estimated `|U_i|/n`
    /// is below this.
    pub min_reach_fraction: f64,
    /// Core vertices sampled to estimate `|U_i|`.
    pub reach_samples: usize,
    /// Roots tried when there is no trail to extend yet.
    pub root_samples: usize,
    /// Shortest growth path accepted when no candidate reaches the target.
    pub min_growth: usize,
}

impl ScheduleConfig {
    /// Defaults for a graph with `n` vertices and `m` edges:
    /// `a = ceil(n ln ln n)`, `b = ceil((n/2) sqrt(ln n))`, `t = floor(m/(a+b))`.
    pub fn defaults(n: usize, m: usize, mode: Mode) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config("stitching defaults need n >= 3".into()));
        }
        let ln = (n as f64).ln();
        let a = ((n as f64) * ln.ln()).ceil().max(1.0) as usize;
        let b = ((n as f64) / 2.0 * ln.sqrt()).ceil().max(1.0) as usize;
        let t = m / (a + b);
        let d = 2.0 * b as f64 / n as f64;
        Ok(ScheduleConfig {
            t,
            a,
            b,
            eps: 0.1,
            mode,
            search_budget: 20_000,
            tree_depth_target: None,
            girth_target: default_girth(n, d),
            prune_eps: 0.5,
            min_retained_fraction: 0.0,
            min_core_degree: 1,
            min_reach_fraction: 0.0,
            reach_samples: 16,
            root_samples: 64,
            min_growth: 1,
        })
    }

    /// The same defaults with the block sizes exchanged, so growth blocks get
    /// `n ln ln n` labels and connector blocks `(n/2) sqrt(ln n)`.
    pub fn swapped_defaults(n: usize, m: usize, mode: Mode) -> Result<Self> {
        let mut cfg = Self::defaults(n, m, mode)?;
        std::mem::swap(&mut cfg.a, &mut cfg.b);
        cfg.girth_target = default_girth(n, 2.0 * cfg.b as f64 / n as f64);
        Ok(cfg)
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.a == 0 || self.b == 0 {
            return Err(Error::Config("block sizes a and b must be positive".into()));
        }
        if self.t.saturating_mul(self.a + self.b) > m {
            return Err(Error::Config(format!(
                "t(a+b) = {} exceeds m = {m}",
                self.t as u128 * (self.a + self.b) as u128
            )));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config(format!("eps = {} must lie in (0, 1)", self.eps)));
        }
        if self.search_budget == 0 {
            return Err(Error::Config("search budget must be positive".into()));
        }
        PruneConfig::new(self.girth_target, self.prune_eps).map(|_| ())
    }
}

/// `ceil(ln n / (2 ln d))` clamped to `3..=16`.
fn default_girth(n: usize, d: f64) -> usize {
    if d <= 1.0 {
        return 16;
    }
    ((n as f64).ln() / (2.0 * d.ln())).ceil().clamp(3.0, 16.0) as usize
}

/// One block pair, as inclusive label ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPair {
    pub connector: (u32, u32),
    pub growth: (u32, u32),
}

/// `I_1, J_1, ..., I_t, J_t` over `1..=t(a+b)`; labels above are unused.
pub fn partition_labels(m: usize, cfg: &ScheduleConfig) -> Result<Vec<IntervalPair>> {
    cfg.validate(m)?;
    let (a, b) = (cfg.a as u32, cfg.b as u32);
    Ok((0..cfg.t as u32)
        .map(|i| {
            let base = i * (a + b);
            IntervalPair {
                connector: (base + 1, base + a),
                growth: (base + a + 1, base + a + b),
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Success,
    Failure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureStage {
    None,
    Core,
    ReachableSet,
    Connector,
}

impl FailureStage {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureStage::None => "none",
            FailureStage::Core => "core",
            FailureStage::ReachableSet => "reachable-set",
            FailureStage::Connector => "connector",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundOutcome {
    /// 1-based round index.
    pub index: usize,
    pub status: Status,
    pub failure_stage: FailureStage,
    /// Edges appended this round, connector included.
    pub gain: usize,
    pub connector_label: Option<u32>,
    /// Per-round target `s`.
    pub target: usize,
    /// Success with a growth path shorter than `target`.
    pub below_target: bool,
    pub core_retained: usize,
    pub core_retained_fraction: f64,
    pub core_min_degree: Option<usize>,
    /// Sampled estimate of `|U_i| / n`; `None` when the round stopped earlier.
    pub reach_fraction_estimate: Option<f64>,
    pub cumulative_length: usize,
}

impl RoundOutcome {
    fn new(index: usize) -> Self {
        RoundOutcome {
            index,
            status: Status::Failure,
            failure_stage: FailureStage::None,
            gain: 0,
            connector_label: None,
            target: 0,
            below_target: false,
            core_retained: 0,
            core_retained_fraction: 0.0,
            core_min_degree: None,
            reach_fraction_estimate: None,
            cumulative_length: 0,
        }
    }

    fn fail(mut self, stage: FailureStage, cumulative: usize) -> Self {
        self.status = Status::Failure;
        self.failure_stage = stage;
        self.gain = 0;
        self.cumulative_length = cumulative;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StitchingRun {
    pub trail: Trail,
    pub rounds: Vec<RoundOutcome>,
}

/// Smallest-label edge among `h_edges` (edge id, label) that leaves `v`,
/// carries a label above `floor_label` and whose far end passes `in_u`.
/// Candidates are tested in increasing label order, so `in_u` runs only
/// until the first hit.
pub fn find_connector<F>(
    graph: &Graph,
    v: u32,
    h_edges: &[(u32, u32)],
    floor_label: u32,
    mut in_u: F,
) -> Option<(u32, u32)>
where
    F: FnMut(u32) -> bool,
{
    let mut candidates: Vec<(u32, u32)> = h_edges
        .iter()
        .copied()
        .filter(|&(e, label)| {
            let (x, y) = graph.edge(e as usize);
            label > floor_label && (x == v || y == v)
        })
        .collect();
    candidates.sort_unstable_by_key(|&(_, label)| label);
    candidates
        .into_iter()
        .find(|&(e, _)| in_u(graph.other_end(e as usize, v)))
}

/// Per-round search structure over the core edges, on the full vertex set.
struct RoundCore {
    graph: Graph,
    labels: Vec<u32>,
    /// Core edge index to edge index of the input graph.
    global: Vec<u32>,
    keep: Vec<bool>,
}

impl RoundCore {
    fn lift(&self, local: &Trail) -> Trail {
        Trail {
            vertices: local.vertices.clone(),
            edges: local.edges.iter().map(|&e| self.global[e as usize]).collect(),
            labels: local.labels.clone(),
        }
    }
}

fn append(trail: &mut Trail, piece: &Trail) {
    debug_assert!(trail.last_label().is_none_or(|l| piece.labels.first().is_none_or(|&f| f > l)));
    if trail.is_empty() {
        *trail = piece.clone();
        return;
    }
    debug_assert_eq!(trail.end(), piece.start());
    for i in 0..piece.len() {
        trail.push(piece.edges[i], piece.labels[i], piece.vertices[i + 1]);
    }
}

/// Runs all `t` rounds. Failed rounds leave the trail untouched; the output
/// is an increasing trail (a path in path mode) whose length is the sum of
/// the round gains.
pub fn run_stitching(og: &OrderedGraph, cfg: &ScheduleConfig) -> Result<StitchingRun> {
    let graph = &og.graph;
    let n = graph.vertex_count();
    let pairs = partition_labels(graph.edge_count(), cfg)?;
    let by_label = og.ordering.edges_by_label();
    let labels = og.labels();
    let prune = PruneConfig::new(cfg.girth_target, cfg.prune_eps)?;

    let mut trail = Trail::default();
    let mut on_trail = vec![false; n];
    let mut rounds = Vec::with_capacity(pairs.len());

    for (i, pair) in pairs.iter().enumerate() {
        let mut out = RoundOutcome::new(i + 1);
        let cumulative = trail.len();
        let growth = &by_label[(pair.growth.0 - 1) as usize..pair.growth.1 as usize];
        let free = |e: u32| {
            let (u, v) = graph.edge(e as usize);
            cfg.mode == Mode::Trail || !(on_trail[u as usize] || on_trail[v as usize])
        };
        let gi_edges: Vec<u32> = growth.iter().copied().filter(|&e| free(e)).collect();
        let gi = graph.edge_subgraph(&gi_edges);
        let core = extract_high_girth_core(&gi, &prune);
        let report = &core.report;
        out.core_retained = report.retained;
        out.core_retained_fraction = report.retained_fraction;
        out.core_min_degree = report.core_min_degree;
        let d_hat = report.core_min_degree.unwrap_or(0);
        if core.is_empty()
            || report.retained_fraction < cfg.min_retained_fraction
            || d_hat < cfg.min_core_degree
        {
            rounds.push(out.fail(FailureStage::Core, cumulative));
            continue;
        }

        let core_edges: Vec<u32> = gi_edges
            .iter()
            .copied()
            .filter(|&e| {
                let (u, v) = graph.edge(e as usize);
                core.keep[u as usize] && core.keep[v as usize]
            })
            .collect();
        let rc = RoundCore {
            graph: graph.edge_subgraph(&core_edges),
            labels: core_edges.iter().map(|&e| labels[e as usize]).collect(),
            global: core_edges.clone(),
            keep: core.keep.clone(),
        };
        let search = IncreasingPathSearch::new(&rc.graph, &rc.labels);
        let s = cfg.tree_depth_target.unwrap_or_else(|| {
            ((1.0 - cfg.eps / 2.0) * std::f64::consts::E * d_hat as f64).ceil() as usize
        });
        let s = s.max(1);
        out.target = s;
        let reach = |u: u32| {
            search.from_root(
                u,
                &RootLimits {
                    floor: 0,
                    blocked: None,
                    max_len: Some(s),
                },
                cfg.search_budget,
            )
        };

        let core_vertices = core.vertices();
        let samples = cfg.reach_samples.min(core_vertices.len()).max(1);
        let stride = core_vertices.len() / samples;
        let hits = (0..samples)
            .filter(|&j| reach(core_vertices[j * stride]).path.len() >= s)
            .count();
        let reach_fraction = hits as f64 / samples as f64 * core_vertices.len() as f64 / n as f64;
        out.reach_fraction_estimate = Some(reach_fraction);
        if reach_fraction < cfg.min_reach_fraction {
            rounds.push(out.fail(FailureStage::ReachableSet, cumulative));
            continue;
        }

        let piece = match trail.end() {
            None => {
                let mut roots = core_vertices.clone();
                roots.sort_by_key(|&v| (std::cmp::Reverse(search.start_bound(v as usize)), v));
                roots.truncate(cfg.root_samples.max(1));
                let mut best = Trail::default();
                for r in roots {
                    if search.start_bound(r as usize) <= best.len() {
                        break;
                    }
                    let found = search.from_root(r, &RootLimits::default(), cfg.search_budget).path;
                    if found.len() > best.len() {
                        best = found;
                    }
                }
                if best.len() < cfg.min_growth.max(1) {
                    rounds.push(out.fail(FailureStage::ReachableSet, cumulative));
                    continue;
                }
                out.below_target = best.len() < s;
                rc.lift(&best)
            }
            Some(v) => {
                let connectors = &by_label[(pair.connector.0 - 1) as usize..pair.connector.1 as usize];
                let h_edges: Vec<(u32, u32)> = connectors
                    .iter()
                    .map(|&e| (e, labels[e as usize]))
                    .collect();
                let floor = trail.last_label().unwrap_or(0);
                // The first candidate reaching the target wins; otherwise the
                // longest growth path seen, ties to the smallest label.
                let mut reached: Option<Trail> = None;
                let mut fallback: Option<Trail> = None;
                let hit = find_connector(graph, v, &h_edges, floor, |u| {
                    if !rc.keep[u as usize] {
                        return false;
                    }
                    let found = reach(u).path;
                    if found.len() >= s {
                        reached = Some(found);
                        return true;
                    }
                    if fallback.as_ref().is_none_or(|t| found.len() > t.len()) {
                        fallback = Some(found);
                    }
                    false
                });
                let (edge, growth_path) = match (hit, reached, fallback) {
                    (Some(c), Some(t), _) => (c, t),
                    (None, _, Some(t)) if t.len() >= cfg.min_growth.max(1) => {
                        let u = t.vertices[0];
                        let c = find_connector(graph, v, &h_edges, floor, |x| x == u)
                            .expect("fallback root is a candidate endpoint");
                        out.below_target = true;
                        (c, t)
                    }
                    _ => {
                        rounds.push(out.fail(FailureStage::Connector, cumulative));
                        continue;
                    }
                };
                let u = graph.other_end(edge.0 as usize, v);
                let mut piece = Trail::single_vertex(v);
                piece.push(edge.0, edge.1, u);
                append(&mut piece, &rc.lift(&growth_path));
                out.connector_label = Some(edge.1);
                piece
            }
        };

        append(&mut trail, &piece);
        for &v in &piece.vertices {
            on_trail[v as usize] = true;
        }
        out.status = Status::Success;
        out.gain = trail.len() - cumulative;
        out.cumulative_length = trail.len();
        rounds.push(out);
    }
    Ok(StitchingRun { trail, rounds })
}

/// Writes one CSV row per round.
pub fn write_round_csv<W: Write>(out: W, runs: &[(u64, &[RoundOutcome])]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "run_id",
        "round",
        "status",
        "failure_stage",
        "gain",
        "core_retained",
        "core_min_degree",
        "cumulative_length",
    ])?;
    for (run_id, rounds) in runs {
        for r in rounds.iter() {
            let status = match r.status {
                Status::Success => "success",
                Status::Failure => "failure",
            };
            w.write_record([
                run_id.to_string(),
                r.index.to_string(),
                status.to_string(),
                r.failure_stage.as_str().to_string(),
                r.gain.to_string(),
                r.core_retained.to_string(),
                r.core_min_degree.map_or(String::new(), |d| d.to_string()),
                r.cumulative_length.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::EdgeOrdering;
    use crate::solvers::walk::validate_trail;
    use crate::Seed;

    fn cfg(t: usize, a: usize, b: usize) -> ScheduleConfig {
        let mut c = ScheduleConfig::defaults(10, 10, Mode::Trail).unwrap();
        c.t = t;
        c.a = a;
        c.b = b;
        c
    }

    #[test]
    fn partition_examples() {
        let p = partition_labels(10, &cfg(2, 2, 3)).unwrap();
        assert_eq!(p[0].connector, (1, 2));
        assert_eq!(p[0].growth, (3, 5));
        assert_eq!(p[1].connector, (6, 7));
        assert_eq!(p[1].growth, (8, 10));
        assert_eq!(partition_labels(11, &cfg(2, 2, 3)).unwrap(), p);
        assert!(partition_labels(9, &cfg(2, 2, 3)).is_err());
    }

    #[test]
    fn connector_prefers_smallest_label_into_u() {
        // v = 0, u1 = 1 in U via label 7, u2 = 2 not in U via label 5
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let h = [(0, 7), (1, 5)];
        assert_eq!(find_connector(&g, 0, &h, 3, |u| u == 1), Some((0, 7)));
        assert_eq!(find_connector(&g, 3, &[(0, 7), (1, 5)], 3, |_| true), None);
        assert_eq!(find_connector(&g, 0, &h, 7, |_| true), None);
        assert_eq!(find_connector(&g, 0, &h, 3, |_| true), Some((1, 5)));
    }

    #[test]
    fn single_round_on_a_complete_graph() {
        let g = Graph::complete(40);
        let m = g.edge_count();
        let og = OrderedGraph::random(g, &Seed::new(3));
        let mut c = ScheduleConfig::defaults(40, m, Mode::Trail).unwrap();
        c.t = 1;
        c.a = 100;
        c.b = m - 100;
        c.girth_target = 3;
        let run = run_stitching(&og, &c).unwrap();
        validate_trail(&og, &run.trail).unwrap();
        assert_eq!(run.rounds.len(), 1);
        assert_eq!(run.rounds[0].gain, run.trail.len());
    }

    #[test]
    fn accounting_and_validity_on_a_small_dense_graph() {
        let g = Graph::complete(60);
        let m = g.edge_count();
        for seed in 0..3 {
            let og = OrderedGraph::random(g.clone(), &Seed::new(seed));
            let c = ScheduleConfig::defaults(60, m, Mode::Trail).unwrap();
            let run = run_stitching(&og, &c).unwrap();
            validate_trail(&og, &run.trail).unwrap();
            let sum: usize = run.rounds.iter().map(|r| r.gain).sum();
            assert_eq!(sum, run.trail.len());
            for r in &run.rounds {
                assert_eq!(r.gain > 0, r.status == Status::Success);
            }
        }
        let og = OrderedGraph::new(Graph::empty(5), EdgeOrdering::identity(0)).unwrap();
        let mut c = ScheduleConfig::defaults(5, 0, Mode::Trail).unwrap();
        c.t = 0;
        assert!(run_stitching(&og, &c).unwrap().trail.is_empty());
    }

    #[test]
    fn round_csv_has_the_fixed_header() {
        let mut buf = Vec::new();
        write_round_csv(&mut buf, &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "run_id,round,status,failure_stage,gain,core_retained,core_min_degree,cumulative_length\n"
        );
    }
}

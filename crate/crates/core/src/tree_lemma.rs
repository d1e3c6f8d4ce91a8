//! Increasing root-to-leaf paths in randomly labelled `D`-ary trees.
//!
//! The main sampler never materializes the tree. Every node is addressed by
//! the hash of its child-ordinal path from the root (mixed with the trial
//! seed), and everything about its children is derived from that hash, so
//! results do not depend on visit order. Only children labelled above the
//! entry label are generated, in ascending label order.
//!
//! For `D` fixed, the expected number of increasing root-to-leaf paths is
//! `D^k / k! ≈ (eD/k)^k`, which is why depth `k ≈ eD` is the threshold.

use std::f64::consts::E;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{Error, Result};
use crate::graph::dary_tree;
use crate::seed::{combine, mix64, stream, unit_f64, Seed};

pub const DEFAULT_EXPANSION_CAP: u64 = 10_000_000_000;

const LABEL_SALT: u64 = 0xA076_1D64_78BD_642F;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSearchConfig {
    pub branching: usize,
    pub depth: usize,
    pub trials: u64,
    pub seed: Seed,
    pub expansion_cap: u64,
}

impl TreeSearchConfig {
    pub fn new(branching: usize, depth: usize, trials: u64, seed: Seed) -> Result<Self> {
        if branching == 0 || depth == 0 {
            return Err(Error::Config("tree branching and depth must be at least 1".into()));
        }
        Ok(TreeSearchConfig {
            branching,
            depth,
            trials,
            seed,
            expansion_cap: DEFAULT_EXPANSION_CAP,
        })
    }

    pub fn trial_seed(&self, trial: u64) -> Seed {
        self.seed.derive_all(&[stream::TREE, trial])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeTrial {
    pub found: bool,
    pub expansions: u64,
    /// Child ordinals of an increasing root-to-leaf path, when found.
    pub witness: Option<Vec<u32>>,
}

const COUNT_SALT: u64 = 0xE703_7ED1_A0B4_28DB;
const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

const RECIPROCALS: [f64; 64] = {
    let mut r = [0.0; 64];
    let mut i = 0;
    while i < 64 {
        r[i] = 1.0 / (i + 1) as f64;
        i += 1;
    }
    r
};

/// How many of the `D` children of `node` carry a label above `entry`:
/// a `Binomial(D, 1 - entry)` draw by inversion, counting the rarer side.
fn children_above(node: u64, branching: usize, entry: f64) -> usize {
    if entry <= 0.0 {
        return branching;
    }
    let u = unit_f64(mix64(node ^ COUNT_SALT));
    let (q, below) = if entry < 0.5 { (entry, true) } else { (1.0 - entry, false) };
    let ratio = q / (1.0 - q);
    let mut p = (1.0 - q).powi(branching as i32);
    let mut cdf = p;
    let mut s = 0;
    while u >= cdf && s < branching {
        let inv = RECIPROCALS.get(s).copied().unwrap_or(1.0 / (s + 1) as f64);
        p *= (branching - s) as f64 * inv * ratio;
        s += 1;
        cdf += p;
    }
    if below {
        branching - s
    } else {
        s
    }
}

/// The smallest of `remaining` i.i.d. uniform labels on `(prev, 1]`, drawn
/// for the child with ordinal `ordinal`.
#[inline]
fn next_label(node: u64, ordinal: usize, prev: f64, remaining: usize) -> f64 {
    let v = 1.0 - unit_f64(mix64(node ^ LABEL_SALT ^ (ordinal as u64 + 1).wrapping_mul(GOLDEN)));
    let spread = match remaining {
        1 => 1.0 - v,
        2 => 1.0 - v.sqrt(),
        _ => -(v.ln() / remaining as f64).exp_m1(),
    };
    let y = prev + (1.0 - prev) * spread;
    y.max(prev.next_up()).min(1.0)
}

/// Labels along a root-to-node address of child ordinals, or `None` if the
/// address leaves the part of the tree reachable by increasing paths.
pub fn implicit_path_labels(branching: usize, trial_seed: &Seed, ordinals: &[u32]) -> Option<Vec<f64>> {
    let mut h = trial_seed.key();
    let mut entry = 0.0;
    let mut labels = Vec::with_capacity(ordinals.len());
    for &c in ordinals {
        let r = children_above(h, branching, entry);
        if c as usize >= r {
            return None;
        }
        let mut y = entry;
        for i in 0..=c as usize {
            y = next_label(h, i, y, r - i);
        }
        labels.push(y);
        entry = y;
        h = combine(h, c as u64);
    }
    Some(labels)
}

struct Frame {
    hash: u64,
    above: usize,
    next: usize,
    prev: f64,
}

/// Depth-first search restricted to labels `<= cap(depth)`, ascending label
/// order. `None` when the expansion budget runs out first.
fn capped_search(
    branching: usize,
    depth: usize,
    root: u64,
    cap: impl Fn(usize) -> f64,
    expansions: &mut u64,
    budget: u64,
) -> Option<Option<Vec<u32>>> {
    let mut stack = vec![Frame {
        hash: root,
        above: branching,
        next: 0,
        prev: 0.0,
    }];
    while let Some(top) = stack.last_mut() {
        if top.next == top.above {
            stack.pop();
            continue;
        }
        let ordinal = top.next;
        let y = next_label(top.hash, ordinal, top.prev, top.above - ordinal);
        top.prev = y;
        top.next += 1;
        let hash = combine(top.hash, ordinal as u64);
        let child_depth = stack.len();
        if y > cap(child_depth) {
            // later siblings only have larger labels
            if let Some(top) = stack.last_mut() {
                top.next = top.above;
            }
            continue;
        }
        if child_depth == depth {
            return Some(Some(stack.iter().map(|f| f.next as u32 - 1).collect()));
        }
        if *expansions >= budget {
            return None;
        }
        *expansions += 1;
        stack.push(Frame {
            hash,
            above: children_above(hash, branching, y),
            next: 0,
            prev: y,
        });
    }
    Some(None)
}

/// Label ramps `(slope, slack)` tried before the unrestricted search: pass
/// `i` only enters a depth-`j` node whose label is at most
/// `slope * (j + slack) / k`. The last pass has no cap, which keeps the
/// answer exact.
const RAMPS: [(f64, f64); 2] = [(1.0, 6.0), (1.15, 6.0)];

/// One exact sample of "some root-to-leaf path of `T_D^k` is increasing".
///
/// Children whose label is below the entry label of their parent can never
/// lie on an increasing path, so they are not generated: a node reached with
/// label `x` draws how many of its `D` children lie above `x`, then their
/// labels as ascending order statistics of uniforms on `(x, 1]`. This is the
/// same law as labelling all edges i.i.d. uniform. Errors once
/// `expansion_cap` nodes have been entered.
pub fn has_increasing_root_leaf_path(
    branching: usize,
    depth: usize,
    trial_seed: &Seed,
    expansion_cap: u64,
) -> Result<TreeTrial> {
    search_with_ramps(branching, depth, trial_seed, expansion_cap, &RAMPS)
}

fn search_with_ramps(
    branching: usize,
    depth: usize,
    trial_seed: &Seed,
    expansion_cap: u64,
    ramps: &[(f64, f64)],
) -> Result<TreeTrial> {
    let root = trial_seed.key();
    let mut expansions = 1u64;
    let k = depth as f64;
    let passes = ramps.iter().map(|&r| Some(r)).chain(std::iter::once(None));
    for ramp in passes {
        let cap = |j: usize| ramp.map_or(1.0, |(s, w)| (s * (j as f64 + w) / k).min(1.0));
        match capped_search(branching, depth, root, cap, &mut expansions, expansion_cap) {
            None => return Err(Error::ExpansionCap { cap: expansion_cap }),
            Some(Some(witness)) => {
                return Ok(TreeTrial {
                    found: true,
                    expansions,
                    witness: Some(witness),
                })
            }
            Some(None) => {}
        }
    }
    Ok(TreeTrial {
        found: false,
        expansions,
        witness: None,
    })
}

/// One CSV row of tree-search results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSearchSummary {
    #[serde(rename = "D")]
    pub branching: usize,
    #[serde(rename = "k")]
    pub depth: usize,
    pub delta: f64,
    pub trials: u64,
    pub successes: u64,
    pub capped: u64,
    /// Success frequency over the uncapped trials.
    pub estimate: f64,
    pub stderr: f64,
    #[serde(rename = "Q")]
    pub q: f64,
}

pub fn q_ratio(branching: usize, depth: usize, delta: f64) -> f64 {
    branching as f64 * E * (1.0 - delta) / depth as f64
}

/// Runs `cfg.trials` independent samples in parallel. Capped trials are
/// counted separately and excluded from the estimate.
pub fn run_tree_search(cfg: &TreeSearchConfig, delta: f64) -> TreeSearchSummary {
    let outcomes: Vec<Option<bool>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            has_increasing_root_leaf_path(cfg.branching, cfg.depth, &cfg.trial_seed(t), cfg.expansion_cap)
                .ok()
                .map(|r| r.found)
        })
        .collect();
    let capped = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let successes = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    let valid = cfg.trials - capped;
    let (estimate, stderr) = if valid == 0 {
        (f64::NAN, f64::NAN)
    } else {
        let p = successes as f64 / valid as f64;
        (p, (p * (1.0 - p) / valid as f64).sqrt())
    };
    TreeSearchSummary {
        branching: cfg.branching,
        depth: cfg.depth,
        delta,
        trials: cfg.trials,
        successes,
        capped,
        estimate,
        stderr,
        q: q_ratio(cfg.branching, cfg.depth, delta),
    }
}

/// The depth-`k` tree and the "good path" window parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodPathParams {
    pub k: usize,
    pub delta: f64,
}

impl GoodPathParams {
    pub fn new(k: usize, delta: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::Domain(format!("delta = {delta} must lie in [0, 1)")));
        }
        if 1.0 - delta - 1.0 / (k as f64) < 0.0 {
            return Err(Error::Domain(format!("1 - delta - 1/k < 0 for k = {k}, delta = {delta}")));
        }
        Ok(GoodPathParams { k, delta })
    }
}

/// `ln P[path is good] = -ln k - ln k! + ln[(1-δ)^k - (1-δ-1/k)^k]`.
pub fn ln_good_path_probability(params: GoodPathParams) -> f64 {
    let k = params.k as f64;
    let top = 1.0 - params.delta;
    let bottom = top - 1.0 / k;
    // (1-δ)^k - b^k = (1-δ)^k (1 - (b/(1-δ))^k)
    let ratio_pow = if bottom <= 0.0 {
        0.0
    } else {
        (k * (bottom / top).ln()).exp()
    };
    -k.ln() - ln_factorial(params.k as u64) + k * top.ln() + (-ratio_pow).ln_1p()
}

/// Probability that a fixed root-to-leaf path with i.i.d. uniform labels is
/// good (monotone, last label in `[1-δ-1/k, 1-δ]`, and `X_i >= (i/k) X_k`).
pub fn good_path_probability(params: GoodPathParams) -> f64 {
    ln_good_path_probability(params).exp()
}

/// `((1-δ)^k / (2k·k!), (1-δ)^k / (k·k!))`.
pub fn good_path_bounds(params: GoodPathParams) -> (f64, f64) {
    let k = params.k as f64;
    let upper = (k * (1.0 - params.delta).ln() - k.ln() - ln_factorial(params.k as u64)).exp();
    (upper / 2.0, upper)
}

pub fn is_good_path(labels: &[f64], delta: f64) -> bool {
    let k = labels.len();
    if k == 0 {
        return false;
    }
    let last = labels[k - 1];
    let monotone = labels.windows(2).all(|w| w[0] <= w[1]);
    let window = 1.0 - delta - 1.0 / k as f64 <= last && last <= 1.0 - delta;
    let ramp = labels
        .iter()
        .enumerate()
        .all(|(i, &x)| x >= (i + 1) as f64 / k as f64 * last);
    monotone && window && ramp
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rotation {
    /// The rotated sequence starts at `increments[index]`.
    pub index: usize,
    /// More than one rotation qualified (a non-generic input).
    pub tied: bool,
}

/// The cyclic shift whose prefix sums dominate the linear ramp
/// `(j/k) * total`.
///
/// With `W_j = S_j - (j/k) * total`, starting the rotation right after
/// position `r` shifts every `W` by `-W_r`, so exactly the positions where
/// `W` attains its minimum qualify. Ties (within a relative `1e-12`) resolve
/// to the smallest index and are flagged.
pub fn unique_good_rotation(increments: &[f64]) -> Rotation {
    let k = increments.len();
    if k == 0 {
        return Rotation { index: 0, tied: false };
    }
    let total: f64 = increments.iter().sum();
    let tol = 1e-12 * total.abs().max(f64::MIN_POSITIVE);
    let mut walk = Vec::with_capacity(k);
    let mut s = 0.0;
    for (j, inc) in increments.iter().enumerate() {
        walk.push(s - j as f64 / k as f64 * total);
        s += inc;
    }
    let min = walk.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hits = walk.iter().enumerate().filter(|(_, &w)| w <= min + tol).map(|(j, _)| j);
    let index = hits.next().unwrap_or(0);
    Rotation {
        index,
        tied: hits.next().is_some(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondMomentRecord {
    pub branching: usize,
    pub depth: usize,
    pub delta: f64,
    pub trials: u64,
    pub mean_z: f64,
    pub mean_z2: f64,
    /// `mean(Z^2) / mean(Z)^2`.
    pub ratio: f64,
    /// `D^k` times the good-path probability.
    pub expected_z: f64,
    pub q: f64,
    /// Fraction of trials with at least one good path.
    pub p_z_positive: f64,
    /// `p_z_positive * k^{3/2}`.
    pub c_fit_k32: f64,
    /// `p_z_positive * k`.
    pub c_fit_k: f64,
}

/// Number of good root-to-leaf paths under one labelling of the explicit tree.
fn count_good_paths(labels: &[f64], branching: usize, depth: usize, delta: f64) -> u64 {
    // BFS numbering: children of v are v*D + 1 ..= v*D + D; edge into v is v - 1.
    fn walk(v: usize, labels: &[f64], d: usize, k: usize, delta: f64, path: &mut Vec<f64>) -> u64 {
        if path.len() == k {
            return u64::from(is_good_path(path, delta));
        }
        let mut z = 0;
        for c in v * d + 1..=v * d + d {
            let x = labels[c - 1];
            if path.last().is_some_and(|&p| x < p) {
                continue;
            }
            path.push(x);
            z += walk(c, labels, d, k, delta, path);
            path.pop();
        }
        z
    }
    walk(0, labels, branching, depth, delta, &mut Vec::with_capacity(depth))
}

pub fn second_moment_diagnostics(
    branching: usize,
    depth: usize,
    delta: f64,
    trials: u64,
    seed: &Seed,
    edge_budget: u64,
) -> Result<SecondMomentRecord> {
    use rand::Rng as _;
    let params = GoodPathParams::new(depth, delta)?;
    let tree = dary_tree(branching, depth, edge_budget)?;
    let m = tree.graph.edge_count();
    let z: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.derive_all(&[stream::SECOND_MOMENT, t]).rng();
            let labels: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            count_good_paths(&labels, branching, depth, delta)
        })
        .collect();
    let n = trials.max(1) as f64;
    let mean_z = z.iter().map(|&x| x as f64).sum::<f64>() / n;
    let mean_z2 = z.iter().map(|&x| (x as f64).powi(2)).sum::<f64>() / n;
    let p_pos = z.iter().filter(|&&x| x > 0).count() as f64 / n;
    let k = depth as f64;
    Ok(SecondMomentRecord {
        branching,
        depth,
        delta,
        trials,
        mean_z,
        mean_z2,
        ratio: mean_z2 / (mean_z * mean_z),
        expected_z: (depth as f64 * (branching as f64).ln() + ln_good_path_probability(params)).exp(),
        q: q_ratio(branching, depth, delta),
        p_z_positive: p_pos,
        c_fit_k32: p_pos * k.powf(1.5),
        c_fit_k: p_pos * k,
    })
}

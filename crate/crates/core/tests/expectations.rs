use std::f64::consts::E;

use increasing_trails::analytics::{
    expected_increasing_paths, expected_increasing_trails_upper, first_moment_crossing, sparse_threshold,
    trail_threshold, RegimeQuery,
};
use increasing_trails::generators::gen_gnp;
use increasing_trails::ordering::OrderedGraph;
use increasing_trails::seed::stream;
use increasing_trails::solvers::sparse_probe;
use increasing_trails::Seed;

/// Number of increasing paths with exactly `k` edges, each counted once in
/// its increasing direction.
fn count_increasing_paths(og: &OrderedGraph, k: usize) -> u64 {
    fn go(og: &OrderedGraph, v: u32, last: u32, left: usize, on: &mut Vec<bool>) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut c = 0;
        for inc in og.graph.incident(v as usize) {
            let l = og.ordering.label(inc.edge as usize);
            let w = inc.neighbor as usize;
            if l > last && !on[w] {
                on[w] = true;
                c += go(og, inc.neighbor, l, left - 1, on);
                on[w] = false;
            }
        }
        c
    }
    let n = og.graph.vertex_count();
    let mut on = vec![false; n];
    (0..n as u32)
        .map(|v| {
            on[v as usize] = true;
            let c = go(og, v, 0, k, &mut on);
            on[v as usize] = false;
            c
        })
        .sum()
}

#[test]
fn increasing_path_count_matches_its_expectation() {
    let (n, k, p, samples) = (12usize, 3usize, 0.5, 4000u64);
    let seed = Seed::new(21);
    let xs: Vec<f64> = (0..samples)
        .map(|t| {
            let s = seed.derive(t);
            let g = gen_gnp(n, p, &s.derive(stream::GRAPH)).unwrap();
            count_increasing_paths(&OrderedGraph::random(g, &s.derive(stream::ORDERING)), k) as f64
        })
        .collect();
    let mean = xs.iter().sum::<f64>() / samples as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
    let expected = expected_increasing_paths(&RegimeQuery::new(n as u64, p, k as u64).unwrap()).value;
    // 12·11·10·9 sequences · p^3 / 3!
    assert!((expected - 11880.0 * 0.125 / 6.0).abs() < 1e-9);
    assert!((mean - expected).abs() < 4.0 * (var / samples as f64).sqrt(), "{mean} vs {expected}");
}

#[test]
fn first_moment_crosses_below_the_trail_threshold() {
    for n in [250u64, 500, 1000, 2000, 10_000, 1_000_000] {
        // dense part of the sweep; at np around 10 the additive log n term still shows
        for p in [1.0, 0.5, 0.1] {
            let k = first_moment_crossing(n, p).unwrap();
            let limit = trail_threshold(n, p, 0.1).ceil() as u64;
            assert!(k <= limit, "n={n} p={p}: crossing {k} above {limit}");
            let below = expected_increasing_trails_upper(&RegimeQuery::new(n, p, k).unwrap());
            assert!(below.ln < 0.0);
            if k > 1 {
                let above = expected_increasing_trails_upper(&RegimeQuery::new(n, p, k - 1).unwrap());
                assert!(above.ln >= 0.0);
            }
        }
    }
}

#[test]
fn thresholds_use_natural_logs() {
    assert!((trail_threshold(1000, 0.01, 0.0) - 10.0 * E).abs() < 1e-12);
    assert!((sparse_threshold(1_000_000).unwrap() - 13.815_510_557_964_274 / 13.815_510_557_964_274f64.ln()).abs() < 1e-12);
    assert!((trail_threshold(7, 0.3, 0.1) / trail_threshold(7, 0.3, 0.0) - 1.1).abs() < 1e-12);
}

#[test]
fn sparse_probe_segments_are_monotone_at_rate_two_over_k_factorial() {
    let (n, k, trials) = (100_000usize, 4usize, 100u64);
    let seed = Seed::new(99);
    let mut segments = 0u64;
    let mut hits = 0u64;
    for t in 0..trials {
        let s = seed.derive(t);
        let g = gen_gnp(n, 2.0 / n as f64, &s.derive(stream::GRAPH)).unwrap();
        let probe = sparse_probe(&OrderedGraph::random(g, &s.derive(stream::ORDERING)), k);
        segments += probe.segments as u64;
        hits += probe.increasing_segments as u64;
    }
    let q = 2.0 / 24.0;
    let mean = segments as f64 * q;
    let sd = (segments as f64 * q * (1.0 - q)).sqrt();
    assert!((hits as f64 - mean).abs() < 4.0 * sd, "{hits} vs {mean}");
}

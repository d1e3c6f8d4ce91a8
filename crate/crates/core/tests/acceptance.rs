//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.
//!
//! Calibrated thresholds live in CALIBRATION.md at the repository root.

use std::collections::VecDeque;
use std::f64::consts::E;
use std::time::{Duration, Instant};

use increasing_trails::analytics::{expected_increasing_paths, expected_short_cycles, RegimeQuery};
use increasing_trails::generators::{gen_gnm, gen_gnp};
use increasing_trails::graph::Graph;
use increasing_trails::harness::{run_experiment, write_records, Algorithm, Density, ExperimentConfig, Format, PSpec};
use increasing_trails::ordering::{EdgeOrdering, OrderedGraph};
use increasing_trails::seed::stream;
use increasing_trails::solvers::{
    enumerate_paths_bruteforce, enumerate_trails_bruteforce, longest_increasing_path_exact,
    longest_increasing_trail_length, validate_path, validate_trail, SearchBudget,
};
use increasing_trails::stitching::{run_stitching, Mode, ScheduleConfig};
use increasing_trails::subgraph::{extract_high_girth_core, PruneConfig};
use increasing_trails::tree_lemma::{
    good_path_bounds, good_path_probability, is_good_path, run_tree_search, unique_good_rotation, GoodPathParams,
    TreeSearchConfig,
};
use increasing_trails::worst_case::{gk_bound, m_star_exhaustive_with, m_star_sampled_upper, ExhaustiveOptions};
use increasing_trails::Seed;
use rand::Rng;

const ROOT: u64 = 2024;

/// Lower edge of mean(DP length)/(e n) on K_2000.
const KN_RATIO_LOWER: f64 = 0.85;
/// Retained fraction required of the high-girth core on G(2^17, 6n), k = 6, eps = 0.1.
const PRUNE_RETAINED_THRESHOLD: f64 = 0.0;

fn report(id: u32, name: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("{verdict} [{id:>2}] {name}: {detail}");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn random_small_graph(seed: &Seed) -> OrderedGraph {
    let mut rng = seed.rng();
    let n = rng.random_range(1..=7usize);
    let pairs = n * (n - 1) / 2;
    let m = rng.random_range(0..=pairs) as u64;
    let g = gen_gnm(n, m, &seed.derive(stream::GRAPH)).unwrap();
    OrderedGraph::random(g, &seed.derive(stream::ORDERING))
}

#[test]
fn c01_oracle_equivalence() {
    let start = Instant::now();
    let mut trail_hits = 0;
    let mut path_hits = 0;
    let total = 200;
    for i in 0..total {
        let og = random_small_graph(&Seed::new(ROOT).derive_all(&[1, i]));
        if longest_increasing_trail_length(&og) == enumerate_trails_bruteforce(&og).unwrap() {
            trail_hits += 1;
        }
        let out = longest_increasing_path_exact(&og, SearchBudget::unlimited()).unwrap();
        if out.exact && out.path.len() == enumerate_paths_bruteforce(&og).unwrap() {
            path_hits += 1;
        }
    }
    let took = start.elapsed();
    report(
        1,
        "oracle equivalence",
        trail_hits == total && path_hits == total && took < Duration::from_secs(60),
        format!("trails {trail_hits}/{total}, paths {path_hits}/{total}, {took:.2?}"),
    );
}

fn single_threaded() -> ExhaustiveOptions {
    ExhaustiveOptions {
        threads: Some(1),
        ..Default::default()
    }
}

#[test]
fn c02_worst_case_exact_values() {
    let start = Instant::now();
    let mut got = Vec::new();
    let mut counts_ok = true;
    for (n, count) in [(3usize, 6u64), (4, 720), (5, 3_628_800)] {
        let r = m_star_exhaustive_with(&Graph::complete(n), &single_threaded()).unwrap();
        counts_ok &= r.exhaustive && r.orderings_examined == count;
        got.push(r.value);
    }
    let took = start.elapsed();
    report(
        2,
        "m*(K_3), m*(K_4), m*(K_5)",
        got == [3, 3, 5] && counts_ok && took < Duration::from_secs(600),
        format!("{got:?}, full enumeration single-threaded in {took:.2?}"),
    );
}

#[test]
fn c03_average_degree_bound() {
    let mut violations = 0u64;
    let mut checked = 0u64;
    // the exhaustive minima over all orderings of K_3, K_4, K_5
    for n in 3..=5 {
        let g = Graph::complete(n);
        let r = m_star_exhaustive_with(&g, &single_threaded()).unwrap();
        checked += r.orderings_examined;
        if (r.value as f64) < gk_bound(&g) {
            violations += 1;
        }
    }
    let graphs = [
        Graph::complete(6),
        Graph::cycle(8),
        gen_gnm(10, 15, &Seed::new(ROOT).derive_all(&[3, 0])).unwrap(),
        gen_gnm(10, 15, &Seed::new(ROOT).derive_all(&[3, 1])).unwrap(),
        Graph::petersen(),
    ];
    for (i, g) in graphs.iter().enumerate() {
        let bound = gk_bound(g);
        for t in 0..10_000u64 {
            let og = OrderedGraph::random(g.clone(), &Seed::new(ROOT).derive_all(&[3, 100 + i as u64, t]));
            checked += 1;
            if (longest_increasing_trail_length(&og) as f64) < bound {
                violations += 1;
            }
        }
        // the sampled minimum sits above the bound as well
        if (m_star_sampled_upper(g, 10_000, &Seed::new(ROOT).derive(i as u64)).value as f64) < bound {
            violations += 1;
        }
    }
    report(
        3,
        "trail length >= 2m/n",
        violations == 0,
        format!("{violations} violations over {checked} orderings"),
    );
}

#[test]
fn c04_good_path_probability() {
    let exact = good_path_probability(GoodPathParams::new(2, 0.0).unwrap());
    let exact_ok = (exact - 3.0 / 16.0).abs() < 1e-15;

    let (k, delta, draws) = (5usize, 0.1, 1_000_000u64);
    let mut rng = Seed::new(ROOT).derive(4).rng();
    let mut x = vec![0.0; k];
    let mut hits = 0u64;
    for _ in 0..draws {
        for v in x.iter_mut() {
            *v = rng.random::<f64>();
        }
        hits += u64::from(is_good_path(&x, delta));
    }
    let p = good_path_probability(GoodPathParams::new(k, delta).unwrap());
    let freq = hits as f64 / draws as f64;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    let mc_ok = (freq - p).abs() < 3.0 * se;

    let mut sandwich_ok = true;
    let mut points = 0;
    for k in 2..=12 {
        for delta in [0.05, 0.1, 0.2] {
            if 1.0 - delta - 1.0 / k as f64 >= 0.0 {
                let params = GoodPathParams::new(k, delta).unwrap();
                let (lo, hi) = good_path_bounds(params);
                let v = good_path_probability(params);
                sandwich_ok &= lo <= v && v <= hi;
                points += 1;
            }
        }
    }
    report(
        4,
        "good-path probability",
        exact_ok && mc_ok && sandwich_ok,
        format!(
            "P(k=2,δ=0) = {exact}; MC {freq:.6} vs {p:.6} ({:.2} SE); bounds hold at {points} grid points: {sandwich_ok}",
            (freq - p).abs() / se
        ),
    );
}

#[test]
fn c05_unique_rotation() {
    let start = Instant::now();
    let k = 8;
    let mut rng = Seed::new(ROOT).derive(5).rng();
    let mut bad = 0;
    let mut inc = vec![0.0; k];
    for _ in 0..100_000 {
        for v in inc.iter_mut() {
            *v = rng.random::<f64>();
        }
        let total: f64 = inc.iter().sum();
        // rotations whose every prefix sum reaches the ramp (j/k) total
        let qualifying: Vec<usize> = (0..k)
            .filter(|&r| {
                let mut s = 0.0;
                (1..=k).all(|j| {
                    s += inc[(r + j - 1) % k];
                    s >= j as f64 / k as f64 * total - 1e-12
                })
            })
            .collect();
        let rot = unique_good_rotation(&inc);
        if qualifying != [rot.index] || rot.tied {
            bad += 1;
        }
    }
    let took = start.elapsed();
    report(
        5,
        "cyclic rotation uniqueness",
        bad == 0 && took < Duration::from_secs(10),
        format!("{bad} of 10^5 vectors without exactly one rotation, {took:.2?}"),
    );
}

/// Success probability of the depth-2 binary tree by enumerating the 720
/// rank orders of its six edges. Edges 0, 1 leave the root; 2, 3 hang
/// below edge 0 and 4, 5 below edge 1.
fn binary_depth_two_exact() -> f64 {
    let mut ranks: Vec<u32> = (0..6).collect();
    let mut good = 0u32;
    let mut total = 0u32;
    loop {
        let up = |a: usize, b: usize| ranks[a] < ranks[b];
        if up(0, 2) || up(0, 3) || up(1, 4) || up(1, 5) {
            good += 1;
        }
        total += 1;
        // next lexicographic permutation
        let Some(i) = (0..5).rev().find(|&i| ranks[i] < ranks[i + 1]) else {
            break;
        };
        let j = (i + 1..6).rev().find(|&j| ranks[j] > ranks[i]).unwrap();
        ranks.swap(i, j);
        ranks[i + 1..].reverse();
    }
    assert_eq!(total, 720);
    good as f64 / 720.0
}

#[test]
fn c06_tree_lemma() {
    let seed = Seed::new(ROOT).derive(6);
    let trials = 100_000u64;
    let a = run_tree_search(&TreeSearchConfig::new(1, 4, trials, seed.derive(1)).unwrap(), 0.1);
    let pa = 1.0 / 24.0;
    let sa = (pa * (1.0 - pa) / trials as f64).sqrt();
    let a_ok = a.capped == 0 && (a.estimate - pa).abs() < 4.0 * sa;

    let pb = binary_depth_two_exact();
    let b = run_tree_search(&TreeSearchConfig::new(2, 2, trials, seed.derive(2)).unwrap(), 0.1);
    let sb = (pb * (1.0 - pb) / trials as f64).sqrt();
    let b_ok = b.capped == 0 && (b.estimate - pb).abs() < 4.0 * sb;

    let start = Instant::now();
    let mut rows = Vec::new();
    for d in [5usize, 10, 15, 20] {
        let k = (0.8 * E * d as f64).round() as usize;
        let s = run_tree_search(&TreeSearchConfig::new(d, k, 1000, seed.derive(d as u64)).unwrap(), 0.1);
        rows.push(s);
    }
    let capped: u64 = rows.iter().map(|r| r.capped).sum();
    let monotone = rows.windows(2).all(|w| {
        let combined = (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt();
        w[1].estimate >= w[0].estimate - 2.0 * combined
    });
    let c_ok = capped == 0 && monotone && rows[3].estimate > rows[0].estimate;
    let trend: Vec<String> = rows
        .iter()
        .map(|r| format!("D={} k={}: {:.3}±{:.3}", r.branching, r.depth, r.estimate, r.stderr))
        .collect();
    report(
        6,
        "tree lemma",
        a_ok && b_ok && c_ok,
        format!(
            "(a) {:.5} vs 1/24 ({:.2}σ); (b) {:.5} vs {pb:.5} ({:.2}σ); (c) {} [{capped} capped, {:.1?}]",
            a.estimate,
            (a.estimate - pa).abs() / sa,
            b.estimate,
            (b.estimate - pb).abs() / sb,
            trend.join(", "),
            start.elapsed()
        ),
    );
}

#[test]
fn c07_complete_graph_trend() {
    let start = Instant::now();
    let mut cfg = ExperimentConfig::new(
        "kn-trend",
        Algorithm::TrailDp,
        vec![250, 500, 1000, 2000],
        vec![Density::P(PSpec::Fixed(1.0))],
    );
    cfg.trials = 5;
    cfg.seed = ROOT;
    let records = run_experiment(&cfg).unwrap();
    let means: Vec<f64> = records
        .chunks(5)
        .map(|c| c.iter().map(|r| r.length as f64 / (E * r.n as f64)).sum::<f64>() / 5.0)
        .collect();
    let took = start.elapsed();
    let nondecreasing = means.windows(2).all(|w| w[1] >= w[0]);
    let last = means[3];
    let pass = nondecreasing
        && (KN_RATIO_LOWER..=1.02).contains(&last)
        && means.iter().all(|&m| m <= 1.10)
        && took < Duration::from_secs(120);
    report(
        7,
        "K_n finite-size trend",
        pass,
        format!("mean ratio by n = 250..2000: {means:.4?}, window [{KN_RATIO_LOWER}, 1.02] at n=2000, {took:.2?}"),
    );
}

#[test]
fn c08_sparse_regime() {
    let n = 1_000_000usize;
    let mut lengths = Vec::new();
    for t in 0..20u64 {
        let s = Seed::new(ROOT).derive_all(&[8, t]);
        let g = gen_gnp(n, 3.0 / n as f64, &s.derive(stream::GRAPH)).unwrap();
        let og = OrderedGraph::random(g, &s.derive(stream::ORDERING));
        lengths.push(longest_increasing_trail_length(&og));
    }
    let pass = lengths.iter().all(|l| (3..=12).contains(l));
    report(
        8,
        "G(10^6, 3/n) trail length in [3, 12]",
        pass,
        format!("lengths {lengths:?}; ln n / ln ln n = {:.3}", (n as f64).ln() / (n as f64).ln().ln()),
    );
}

#[test]
fn c09_stitching_certified() {
    let mut problems = Vec::new();
    let mut trail_lengths = Vec::new();
    for t in 0..20u64 {
        let s = Seed::new(ROOT).derive_all(&[9, t]);
        let og = OrderedGraph::random(Graph::complete(2000), &s.derive(stream::ORDERING));
        let cfg = ScheduleConfig::defaults(2000, og.graph.edge_count(), Mode::Trail).unwrap();
        let run = run_stitching(&og, &cfg).unwrap();
        let gains: usize = run.rounds.iter().map(|r| r.gain).sum();
        if validate_trail(&og, &run.trail).is_err() || gains != run.trail.len() {
            problems.push(format!("trail run {t}"));
        }
        trail_lengths.push(run.trail.len());
    }
    let mut path_lengths = Vec::new();
    let n = 10_000usize;
    let p = 4.0 * (n as f64).ln() / n as f64;
    for t in 0..10u64 {
        let s = Seed::new(ROOT).derive_all(&[9, 100 + t]);
        let g = gen_gnp(n, p, &s.derive(stream::GRAPH)).unwrap();
        let og = OrderedGraph::random(g, &s.derive(stream::ORDERING));
        let cfg = ScheduleConfig::defaults(n, og.graph.edge_count(), Mode::Path).unwrap();
        let run = run_stitching(&og, &cfg).unwrap();
        let gains: usize = run.rounds.iter().map(|r| r.gain).sum();
        if validate_path(&og, &run.trail).is_err() || gains != run.trail.len() {
            problems.push(format!("path run {t}"));
        }
        path_lengths.push(run.trail.len());
    }
    report(
        9,
        "stitching output certified",
        problems.is_empty(),
        format!("trail lengths on K_2000 {trail_lengths:?}; path lengths {path_lengths:?}; problems {problems:?}"),
    );
}

/// True when `h` has no cycle shorter than `k`: for every edge `uv`, no
/// `u`-`v` path of length `<= k - 2` avoids it.
fn no_cycle_shorter_than(h: &Graph, k: usize) -> bool {
    let n = h.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        let mut q = VecDeque::from([u]);
        dist[u as usize] = 0;
        touched.push(u);
        let mut found = false;
        while let Some(x) = q.pop_front() {
            let d = dist[x as usize];
            if d >= k - 2 {
                continue;
            }
            for inc in h.incident(x as usize) {
                let y = inc.neighbor;
                if inc.edge as usize == e || dist[y as usize] != usize::MAX {
                    continue;
                }
                if y == v {
                    found = true;
                }
                dist[y as usize] = d + 1;
                touched.push(y);
                q.push_back(y);
            }
        }
        for w in touched.drain(..) {
            dist[w as usize] = usize::MAX;
        }
        if found {
            return false;
        }
    }
    true
}

#[test]
fn c10_girth_pruner() {
    let n = 1usize << 17;
    let cfg = PruneConfig::new(6, 0.1).unwrap();
    let mut fractions = Vec::new();
    let mut ok = true;
    for t in 0..20u64 {
        let g = gen_gnm(n, 6 * n as u64, &Seed::new(ROOT).derive_all(&[10, t])).unwrap();
        let core = extract_high_girth_core(&g, &cfg);
        let (h, _) = core.induced(&g);
        let min_deg = (0..h.vertex_count()).map(|v| h.degree(v)).min();
        ok &= no_cycle_shorter_than(&h, 6);
        ok &= min_deg.is_none_or(|d| d as f64 >= core.report.min_degree_bound());
        ok &= core.report.retained_fraction >= PRUNE_RETAINED_THRESHOLD;
        fractions.push(core.report.retained_fraction);
    }
    // for scale only: the same graphs keep most vertices at eps = 0.5
    let g = gen_gnm(n, 6 * n as u64, &Seed::new(ROOT).derive_all(&[10, 0])).unwrap();
    let wide = extract_high_girth_core(&g, &PruneConfig::new(6, 0.5).unwrap()).report.retained_fraction;
    report(
        10,
        "girth pruner postconditions",
        ok,
        format!(
            "retained fractions {:?} (threshold {PRUNE_RETAINED_THRESHOLD}); eps 0.5 keeps {wide:.3} (not gated)",
            fractions.iter().map(|f| format!("{f:.3}")).collect::<Vec<_>>()
        ),
    );
}

/// Increasing paths with exactly `k` edges, each counted once.
fn count_increasing_paths(og: &OrderedGraph, k: usize) -> u64 {
    fn go(og: &OrderedGraph, v: u32, last: u32, left: usize, on: &mut [bool]) -> u64 {
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
fn c11_expectation_formulas() {
    // every ordering of K_4
    let k4 = Graph::complete(4);
    let mut labels: Vec<u32> = (1..=6).collect();
    let mut total = 0u64;
    let mut count = 0u64;
    loop {
        let og = OrderedGraph::new(k4.clone(), EdgeOrdering::new(labels.clone()).unwrap()).unwrap();
        total += count_increasing_paths(&og, 2);
        count += 1;
        let Some(i) = (0..5).rev().find(|&i| labels[i] < labels[i + 1]) else {
            break;
        };
        let j = (i + 1..6).rev().find(|&j| labels[j] > labels[i]).unwrap();
        labels.swap(i, j);
        labels[i + 1..].reverse();
    }
    let average = total as f64 / count as f64;
    let formula = expected_increasing_paths(&RegimeQuery::new(4, 1.0, 2).unwrap()).value;
    let small_ok = count == 720 && average == 12.0 && (formula - 12.0).abs() < 1e-9;

    let samples = 10_000u64;
    let xs: Vec<f64> = (0..samples)
        .map(|t| {
            let s = Seed::new(ROOT).derive_all(&[11, t]);
            let g = gen_gnp(100, 0.1, &s.derive(stream::GRAPH)).unwrap();
            count_increasing_paths(&OrderedGraph::random(g, &s.derive(stream::ORDERING)), 5) as f64
        })
        .collect();
    let mean = xs.iter().sum::<f64>() / samples as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
    let se = (var / samples as f64).sqrt();
    let expected = expected_increasing_paths(&RegimeQuery::new(100, 0.1, 5).unwrap()).value;
    let mc_ok = (mean - expected).abs() < 4.0 * se;

    let cycles = expected_short_cycles(4, 4, 1.0).unwrap();
    let cycles_ok = (cycles - 7.0).abs() < 1e-12;
    report(
        11,
        "expectation formulas",
        small_ok && mc_ok && cycles_ok,
        format!(
            "K_4 average {average} vs {formula}; G(100, 0.1) k=5: {mean:.1} vs {expected:.1} ({:.2} SE); short cycles {cycles}",
            (mean - expected).abs() / se
        ),
    );
}

#[test]
fn c12_determinism() {
    let configs = [
        (Algorithm::TrailDp, vec![100, 400], vec![Density::P(PSpec::Fixed(0.3)), Density::P(PSpec::OverN(5.0))]),
        (Algorithm::PathSearch, vec![500], vec![Density::M(1500)]),
        (Algorithm::ConstructTrail, vec![300], vec![Density::P(PSpec::Fixed(1.0))]),
        (Algorithm::GirthPrune, vec![2000], vec![Density::P(PSpec::OverN(10.0))]),
        (Algorithm::SparseProbe, vec![5000], vec![Density::P(PSpec::OverN(2.0))]),
    ];
    let mut identical = 0;
    for (alg, n, density) in configs.iter().cloned() {
        let mut cfg = ExperimentConfig::new("det", alg, n, density);
        cfg.trials = 4;
        cfg.seed = ROOT;
        cfg.budget = 100_000;
        let mut outputs = Vec::new();
        for threads in [1, 8, 1, 8] {
            cfg.threads = Some(threads);
            let mut buf = Vec::new();
            write_records(&run_experiment(&cfg).unwrap(), Format::Csv, &mut buf).unwrap();
            outputs.push(buf);
        }
        if outputs.windows(2).all(|w| w[0] == w[1]) {
            identical += 1;
        }
    }
    report(
        12,
        "determinism across runs and worker counts",
        identical == configs.len(),
        format!("{identical}/{} configs byte-identical with 1 and 8 workers", configs.len()),
    );
}

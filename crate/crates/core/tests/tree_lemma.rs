use increasing_trails::tree_lemma::{
    good_path_bounds, good_path_probability, has_increasing_root_leaf_path, is_good_path, run_tree_search,
    second_moment_diagnostics, unique_good_rotation, GoodPathParams, TreeSearchConfig,
};
use increasing_trails::Seed;
use proptest::prelude::*;
use rand::Rng;

/// Probability of an increasing root-to-leaf path in the `D`-ary tree of
/// depth `k`: with `P_0 = 1` and `P_r(x) = 1 - (1 - int_x^1 P_{r-1})^D`,
/// the answer is `P_k(0)`. Tail integrals by the trapezoid rule on a fine
/// grid.
fn exact_tree_probability(d: usize, k: usize) -> f64 {
    let n = 200_000;
    let h = 1.0 / n as f64;
    let mut p = vec![1.0; n + 1];
    for _ in 0..k {
        let mut next = vec![0.0; n + 1];
        let mut tail = 0.0;
        for i in (0..=n).rev() {
            if i < n {
                tail += 0.5 * h * (p[i] + p[i + 1]);
            }
            next[i] = 1.0 - (1.0 - tail).powi(d as i32);
        }
        p = next;
    }
    p[0]
}

#[test]
fn quadrature_oracle_sanity() {
    // a single path of k edges is increasing with probability 1/k!
    assert!((exact_tree_probability(1, 4) - 1.0 / 24.0).abs() < 1e-9);
    // D = 2, k = 2: each root edge with label x continues w.p. 1 - x^2,
    // so one branch succeeds w.p. 2/3 and the tree w.p. 1 - 1/9
    assert!((exact_tree_probability(2, 2) - 8.0 / 9.0).abs() < 1e-9);
}

#[test]
fn sampler_matches_exact_probabilities() {
    for (d, k, trials) in [(2usize, 4usize, 20_000u64), (3, 6, 20_000), (4, 9, 10_000)] {
        let cfg = TreeSearchConfig::new(d, k, trials, Seed::new(31)).unwrap();
        let s = run_tree_search(&cfg, 0.1);
        assert_eq!(s.capped, 0);
        let exact = exact_tree_probability(d, k);
        let sd = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((s.estimate - exact).abs() < 4.0 * sd, "D={d} k={k}: {} vs {exact}", s.estimate);
    }
}

#[test]
fn chain_law_is_one_over_k_factorial() {
    let trials = 100_000u64;
    let cfg = TreeSearchConfig::new(1, 5, trials, Seed::new(8)).unwrap();
    let s = run_tree_search(&cfg, 0.1);
    let p = 1.0 / 120.0;
    assert!((s.estimate - p).abs() < 4.0 * (p * (1.0 - p) / trials as f64).sqrt());
}

#[test]
fn deterministic_per_trial_seed() {
    for t in 0..20 {
        let s = Seed::new(4).derive(t);
        let a = has_increasing_root_leaf_path(5, 11, &s, u64::MAX).unwrap();
        let b = has_increasing_root_leaf_path(5, 11, &s, u64::MAX).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn good_path_frequency_for_a_single_path() {
    // D = 1: Z is the indicator that the one path is good
    let rec = second_moment_diagnostics(1, 4, 0.1, 200_000, &Seed::new(2), 1 << 20).unwrap();
    let p = good_path_probability(GoodPathParams::new(4, 0.1).unwrap());
    assert!((rec.mean_z - p).abs() < 4.0 * (p * (1.0 - p) / 200_000.0).sqrt());
    assert_eq!(rec.mean_z, rec.mean_z2);
}

#[test]
fn good_path_count_has_mean_d_to_the_k_times_p() {
    let trials = 100_000u64;
    let rec = second_moment_diagnostics(3, 3, 0.2, trials, &Seed::new(6), 1 << 20).unwrap();
    let mean = 27.0 * good_path_probability(GoodPathParams::new(3, 0.2).unwrap());
    assert!((rec.expected_z - mean).abs() < 1e-12);
    let var = rec.mean_z2 - rec.mean_z * rec.mean_z;
    let se = (var / trials as f64).sqrt();
    assert!((rec.mean_z - mean).abs() < 4.0 * se, "{} vs {mean}", rec.mean_z);
}

#[test]
fn good_path_monte_carlo_matches_formula() {
    let (k, delta, draws) = (5usize, 0.1, 1_000_000u64);
    let mut rng = Seed::new(13).rng();
    let mut hits = 0u64;
    let mut x = vec![0.0; k];
    for _ in 0..draws {
        for v in x.iter_mut() {
            *v = rng.random::<f64>();
        }
        hits += u64::from(is_good_path(&x, delta));
    }
    let p = good_path_probability(GoodPathParams::new(k, delta).unwrap());
    let freq = hits as f64 / draws as f64;
    assert!((freq - p).abs() < 4.0 * (p * (1.0 - p) / draws as f64).sqrt(), "{freq} vs {p}");
}

#[test]
fn good_path_probability_within_its_bounds() {
    for k in 2..=12 {
        for delta in [0.05, 0.1, 0.2] {
            let Ok(params) = GoodPathParams::new(k, delta) else { continue };
            let (lo, hi) = good_path_bounds(params);
            let p = good_path_probability(params);
            assert!(lo <= p * (1.0 + 1e-12) && p <= hi * (1.0 + 1e-12), "k={k} delta={delta}");
        }
    }
}

/// Rotations `r` whose prefix sums stay at or above the ramp `(j/k) total`.
fn qualifying_rotations(inc: &[f64]) -> Vec<usize> {
    let k = inc.len();
    let total: f64 = inc.iter().sum();
    (0..k)
        .filter(|&r| {
            let mut s = 0.0;
            (1..=k).all(|j| {
                s += inc[(r + j - 1) % k];
                s >= j as f64 / k as f64 * total - 1e-12
            })
        })
        .collect()
}

proptest! {
    #[test]
    fn exactly_one_rotation_dominates_the_ramp(inc in proptest::collection::vec(0.0001f64..1.0, 1..16)) {
        let rot = unique_good_rotation(&inc);
        let brute = qualifying_rotations(&inc);
        prop_assume!(!rot.tied);
        prop_assert_eq!(brute, vec![rot.index]);
    }
}

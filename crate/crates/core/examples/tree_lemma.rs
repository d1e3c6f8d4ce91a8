//! Increasing root-to-leaf paths in randomly labelled D-ary trees: the
//! Monte Carlo success rate around depth 0.8·e·D, the good-path probability
//! and its bounds, and the cyclic-rotation argument.

use std::f64::consts::E;

use increasing_trails::tree_lemma::{
    good_path_bounds, good_path_probability, run_tree_search, second_moment_diagnostics, unique_good_rotation,
    GoodPathParams, TreeSearchConfig,
};
use increasing_trails::Seed;
use rand::Rng;

fn main() -> increasing_trails::Result<()> {
    for d in [2, 5, 10] {
        let k = (0.8 * E * d as f64).round() as usize;
        let cfg = TreeSearchConfig::new(d, k, 400, Seed::new(1))?;
        let s = run_tree_search(&cfg, 0.1);
        println!("D={d} k={k}: P(increasing path) ≈ {:.3} ± {:.3}", s.estimate, s.stderr);
    }

    for k in [2, 5, 10] {
        let params = GoodPathParams::new(k, 0.1)?;
        let (lo, hi) = good_path_bounds(params);
        println!("k={k}: P(good) = {:.3e} in [{lo:.3e}, {hi:.3e}]", good_path_probability(params));
    }

    let mut rng = Seed::new(2).rng();
    let inc: Vec<f64> = (0..8).map(|_| rng.random::<f64>()).collect();
    let r = unique_good_rotation(&inc);
    println!("increments {inc:.2?}: the rotation starting at {} dominates the ramp", r.index);

    let sm = second_moment_diagnostics(3, 6, 0.1, 2000, &Seed::new(3), 1 << 20)?;
    println!(
        "D=3 k=6: E[Z] ≈ {:.3} (formula {:.3}), E[Z²]/E[Z]² ≈ {:.2}",
        sm.mean_z, sm.expected_z, sm.ratio
    );
    Ok(())
}

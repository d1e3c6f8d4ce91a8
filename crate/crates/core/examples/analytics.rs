//! Closed-form expectations: increasing paths, the trail first-moment bound
//! and where it crosses 1, and expected short cycles.

use increasing_trails::analytics::{
    expected_increasing_paths, expected_increasing_trails_upper, expected_short_cycles, first_moment_crossing,
    sparse_threshold, trail_threshold, RegimeQuery,
};

fn main() -> increasing_trails::Result<()> {
    let n = 1000;
    for p in [1.0, 0.05, 3.0 / n as f64] {
        let crossing = first_moment_crossing(n, p);
        println!("n={n} p={p:.4}: bound drops below 1 at k={crossing:?}; (1.1)enp = {:.1}", trail_threshold(n, p, 0.1));
        for k in [2, 5, 10] {
            let q = RegimeQuery::new(n, p, k)?;
            println!(
                "  k={k}: E[paths] = {:.4e}, trail bound = {:.4e}",
                expected_increasing_paths(&q).value,
                expected_increasing_trails_upper(&q).value
            );
        }
    }
    println!("ln n / ln ln n at n=10^6: {:.3}", sparse_threshold(1_000_000)?);
    println!("E[cycles of length 3..=4] in K_4: {}", expected_short_cycles(4, 4, 1.0)?);
    Ok(())
}

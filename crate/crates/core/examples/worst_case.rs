//! Exhaustive m*(K_n) for n = 3, 4, 5, m(K_4), and a sampled upper bound
//! for K_6.

use std::time::Instant;

use increasing_trails::graph::Graph;
use increasing_trails::worst_case::{gk_bound, m_path_exhaustive, m_star_exhaustive, m_star_sampled_upper};
use increasing_trails::Seed;

fn main() -> increasing_trails::Result<()> {
    for n in 3..=5 {
        let g = Graph::complete(n);
        let start = Instant::now();
        let r = m_star_exhaustive(&g)?;
        println!(
            "m*(K_{n}) = {} over {} orderings ({:.2?}), witness {:?}",
            r.value,
            r.orderings_examined,
            start.elapsed(),
            r.witness_ordering.labels()
        );
    }

    let start = Instant::now();
    let r = m_path_exhaustive(&Graph::complete(4))?;
    println!("m(K_4) = {} ({:.2?})", r.value, start.elapsed());

    let k6 = Graph::complete(6);
    let s = m_star_sampled_upper(&k6, 100_000, &Seed::new(7));
    println!("m*(K_6) <= {} from 1e5 samples, average degree {}", s.value, gk_bound(&k6));
    Ok(())
}

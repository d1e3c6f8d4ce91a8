//! Longest increasing trail on randomly ordered K_n and G(n, p), with the
//! witness checked by the validator and compared to e·n·p.
//!
//! cargo run --release --example trail_dp -- [n]

use std::f64::consts::E;
use std::time::Instant;

use increasing_trails::generators::gen_gnp;
use increasing_trails::graph::Graph;
use increasing_trails::ordering::OrderedGraph;
use increasing_trails::seed::stream;
use increasing_trails::solvers::trail_dp::longest_increasing_trail;
use increasing_trails::solvers::walk::validate_trail;
use increasing_trails::Seed;

fn main() -> increasing_trails::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(1000, |a| a.parse().expect("n"));
    let seed = Seed::new(11);

    for p in [1.0, 0.1, 0.01] {
        let start = Instant::now();
        let g = if p == 1.0 {
            Graph::complete(n)
        } else {
            gen_gnp(n, p, &seed.derive(stream::GRAPH))?
        };
        let og = OrderedGraph::random(g, &seed.derive(stream::ORDERING));
        let trail = longest_increasing_trail(&og);
        validate_trail(&og, &trail).expect("DP witness is an increasing trail");
        println!(
            "n={n} p={p}: m={} longest trail {} = {:.3}·enp ({:.2?})",
            og.graph.edge_count(),
            trail.len(),
            trail.len() as f64 / (E * n as f64 * p),
            start.elapsed()
        );
    }

    // a tiny case worth reading by hand
    let og = OrderedGraph::with_identity(Graph::cycle(5));
    let t = longest_increasing_trail(&og);
    println!("C_5 labelled 1..5 around the cycle: vertices {:?}, labels {:?}", t.vertices, t.labels);
    Ok(())
}

//! Label-blind long path in a sparse random graph, cut into k-edge segments;
//! each segment is monotone with probability 2/k!.

use increasing_trails::generators::gen_gnp;
use increasing_trails::ordering::OrderedGraph;
use increasing_trails::seed::stream;
use increasing_trails::solvers::sparse_probe;
use increasing_trails::Seed;
use statrs::function::factorial::factorial;

fn main() -> increasing_trails::Result<()> {
    let n = 100_000;
    let seed = Seed::new(4);
    let g = gen_gnp(n, 2.0 / n as f64, &seed.derive(stream::GRAPH))?;
    let og = OrderedGraph::random(g, &seed.derive(stream::ORDERING));
    for k in 2..=6 {
        let probe = sparse_probe(&og, k);
        println!(
            "k={k}: path {} edges, {} segments, {} monotone (expected {:.1})",
            probe.path_length,
            probe.segments,
            probe.increasing_segments,
            probe.segments as f64 * 2.0 / factorial(k as u64)
        );
    }
    Ok(())
}

//! Exact longest increasing path by budgeted search, checked against brute
//! force on small graphs and run on a sparse random graph.

use increasing_trails::generators::gen_gnp;
use increasing_trails::graph::Graph;
use increasing_trails::ordering::OrderedGraph;
use increasing_trails::seed::stream;
use increasing_trails::solvers::{
    enumerate_paths_bruteforce, longest_increasing_path_exact, longest_increasing_trail_length, validate_path,
    OnExhaust, SearchBudget,
};
use increasing_trails::Seed;

fn main() -> increasing_trails::Result<()> {
    for t in 0..5 {
        let og = OrderedGraph::random(Graph::petersen(), &Seed::new(t));
        let out = longest_increasing_path_exact(&og, SearchBudget::unlimited())?;
        validate_path(&og, &out.path).expect("vertex-distinct increasing path");
        println!(
            "Petersen #{t}: path {} (brute force {}), trail {}",
            out.path.len(),
            enumerate_paths_bruteforce(&og)?,
            longest_increasing_trail_length(&og)
        );
    }

    let n = 20_000;
    let seed = Seed::new(3);
    let g = gen_gnp(n, 3.0 / n as f64, &seed.derive(stream::GRAPH))?;
    let og = OrderedGraph::random(g, &seed.derive(stream::ORDERING));
    let budget = SearchBudget::new(5_000_000, OnExhaust::ReturnBest)?;
    let out = longest_increasing_path_exact(&og, budget)?;
    println!(
        "G({n}, 3/n): path {} exact={} after {} expansions; trail {}",
        out.path.len(),
        out.exact,
        out.expansions,
        longest_increasing_trail_length(&og)
    );
    Ok(())
}

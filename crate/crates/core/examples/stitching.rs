//! Builds an increasing trail on a randomly ordered K_n round by round and an
//! increasing path on a sparse G(n, p), then checks both with the validators.
//!
//! cargo run --release --example stitching -- [n_dense] [n_sparse]

use std::time::Instant;

use increasing_trails::generators::gen_gnp;
use increasing_trails::graph::Graph;
use increasing_trails::ordering::OrderedGraph;
use increasing_trails::seed::stream;
use increasing_trails::solvers::trail_dp::longest_increasing_trail_length;
use increasing_trails::solvers::walk::{validate_path, validate_trail};
use increasing_trails::stitching::{run_stitching, write_round_csv, Mode, ScheduleConfig, Status};
use increasing_trails::Seed;

fn main() -> increasing_trails::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n_dense = args.next().unwrap_or(2000);
    let n_sparse = args.next().unwrap_or(10_000);
    let seed = Seed::new(2024);

    let start = Instant::now();
    let og = OrderedGraph::random(Graph::complete(n_dense), &seed.derive(stream::ORDERING));
    let cfg = ScheduleConfig::defaults(n_dense, og.graph.edge_count(), Mode::Trail)?;
    let run = run_stitching(&og, &cfg)?;
    validate_trail(&og, &run.trail).expect("stitched trail is increasing");
    let ok = run.rounds.iter().filter(|r| r.status == Status::Success).count();
    println!(
        "K_{n_dense}: t={} a={} b={} -> trail of length {} ({ok} successful rounds, {:.2?}); exact optimum {}",
        cfg.t,
        cfg.a,
        cfg.b,
        run.trail.len(),
        start.elapsed(),
        longest_increasing_trail_length(&og)
    );

    let n = n_sparse;
    let p = 4.0 * (n as f64).ln() / n as f64;
    let start = Instant::now();
    let g = gen_gnp(n, p, &seed.derive(stream::GRAPH))?;
    let og = OrderedGraph::random(g, &seed.derive(stream::ORDERING));
    let cfg = ScheduleConfig::defaults(n, og.graph.edge_count(), Mode::Path)?;
    let run = run_stitching(&og, &cfg)?;
    validate_path(&og, &run.trail).expect("stitched path is increasing and vertex-distinct");
    println!(
        "G({n}, {p:.5}): t={} -> path of length {} ({:.2?})",
        cfg.t,
        run.trail.len(),
        start.elapsed()
    );
    write_round_csv(std::io::stdout(), &[(0, &run.rounds)])?;
    Ok(())
}

//! High-girth core extraction on G(n, m), with the postconditions checked by
//! an independent girth computation.
//!
//! cargo run --release --example girth_prune -- [n] [eps]

use increasing_trails::generators::gen_gnm;
use increasing_trails::subgraph::{count_short_cycles, extract_high_girth_core, girth, PruneConfig};
use increasing_trails::Seed;

fn main() -> increasing_trails::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20_000, |a| a.parse().expect("n"));
    let eps: f64 = args.next().map_or(0.5, |a| a.parse().expect("eps"));
    let g = gen_gnm(n, 6 * n as u64, &Seed::new(9))?;
    let short = count_short_cycles(&g, 5);
    println!("G({n}, 6n): cycles of length 3..=5: {:?}", &short[3..]);

    for target in [4, 5, 6] {
        let cfg = PruneConfig::new(target, eps)?;
        let core = extract_high_girth_core(&g, &cfg);
        let r = &core.report;
        let (h, _) = core.induced(&g);
        println!(
            "girth >= {target}, eps {eps}: kept {:.1}% (cycle {}, low degree {}, absorbed {}), min degree {:?} >= {:.2}, girth {:?}",
            100.0 * r.retained_fraction,
            r.deleted_cycle_vertices.len(),
            r.deleted_low_degree.len(),
            r.absorbed_sequence.len(),
            r.core_min_degree,
            r.min_degree_bound(),
            girth(&h)
        );
    }
    Ok(())
}

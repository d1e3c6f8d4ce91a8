//! A small parameter sweep through the experiment harness, written as CSV to
//! stdout. Output is identical for any thread count.

use increasing_trails::harness::{parse_int_grid, parse_p_grid, run_experiment, write_records, Algorithm, Density, ExperimentConfig, Format};

fn main() -> increasing_trails::Result<()> {
    let n = parse_int_grid("200:800:x2")?;
    let p = parse_p_grid("1,4/n")?;
    let mut cfg = ExperimentConfig::new("sweep", Algorithm::TrailDp, n, p.into_iter().map(Density::P).collect());
    cfg.trials = 3;
    cfg.seed = 42;
    let records = run_experiment(&cfg)?;
    write_records(&records, Format::Csv, std::io::stdout())?;

    let mut cfg = ExperimentConfig::new("paths", Algorithm::PathSearch, vec![2000], vec![Density::M(6000)]);
    cfg.trials = 2;
    cfg.threads = Some(1);
    write_records(&run_experiment(&cfg)?, Format::Json, std::io::stdout())?;
    Ok(())
}

//! Command-line front end. Exit status: 0 on success, 1 on a configuration
//! or I/O error, 2 when `--strict` is set and some cell failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use increasing_trails::analytics::{
    expected_increasing_paths, expected_increasing_trails_upper, first_moment_crossing, trail_threshold,
    RegimeQuery,
};
use increasing_trails::generators::gen_gnm;
use increasing_trails::graph::Graph;
use increasing_trails::harness::{
    emit, parse_int_grid, parse_p_grid, round_sig6, run_experiment, Algorithm, FileConfig, Format, GridText,
};
use increasing_trails::textio::parse_graph;
use increasing_trails::tree_lemma::{run_tree_search, TreeSearchConfig};
use increasing_trails::worst_case::{
    gk_bound, m_path_exhaustive_with, m_star_exhaustive_with, m_star_sampled_upper, ExhaustiveOptions,
};
use increasing_trails::{Error, Result, Seed};

#[derive(Parser)]
#[command(name = "trailab", version, about = "Increasing trails and paths in edge-ordered random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Vertex counts: 250,500 or 250:2000:x2
    #[arg(long)]
    n: Option<String>,
    /// Edge probabilities: 0.5, 3/n or 4ln/n
    #[arg(long)]
    p: Option<String>,
    /// Edge counts (instead of --p)
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    format: Option<Format>,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Expansion budget for searches
    #[arg(long)]
    budget: Option<u64>,
    /// TOML file with the same keys as these flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Exit with status 2 if any cell failed
    #[arg(long)]
    strict: bool,
    /// Record wall time per cell (output is then not reproducible)
    #[arg(long)]
    timing: bool,
    /// Segment length (sparse-probe), girth target (girth-prune) or path length (expectations)
    #[arg(long)]
    k: Option<String>,
    /// Core extraction eps
    #[arg(long)]
    eps: Option<f64>,
}

impl Common {
    fn settings(&self) -> Result<FileConfig> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let k = match &self.k {
            Some(k) if !k.contains([',', ':']) => {
                Some(k.parse().map_err(|_| Error::Config(format!("bad --k '{k}'")))?)
            }
            _ => None,
        };
        let flags = FileConfig {
            experiment: None,
            n: self.n.clone().map(GridText::Text),
            p: self.p.clone().map(GridText::Text),
            m: self.m.clone().map(GridText::Text),
            trials: self.trials,
            seed: self.seed,
            format: self.format,
            out: self.out.clone(),
            threads: self.threads,
            budget: self.budget,
            strict: self.strict.then_some(true),
            timing: self.timing.then_some(true),
            k,
            eps: self.eps,
        };
        Ok(file.overlay(flags))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    Trail,
    Path,
}

#[derive(Subcommand)]
enum Command {
    /// Longest increasing trail (exact DP) on G(n, p)
    SimulateTrail(Common),
    /// Longest increasing path (budgeted exact search) on G(n, p)
    SimulatePath(Common),
    /// Round-based construction of an increasing trail or path
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "trail")]
        mode: Objective,
    },
    /// Root-to-leaf increasing paths in random D-ary trees
    TreeLemma {
        #[command(flatten)]
        common: Common,
        /// Branching factors
        #[arg(long, default_value = "5,10,15,20")]
        branching: String,
        /// Depths; defaults to round(0.8 e D) per D
        #[arg(long)]
        depth: Option<String>,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// High-girth core extraction statistics
    GirthPrune(Common),
    /// m*(G) or m(G) over all or sampled orderings
    WorstCase {
        #[command(flatten)]
        common: Common,
        /// complete:N, cycle:N, path:N, star:N, petersen, gnm:N:M, or a graph file
        #[arg(long, default_value = "complete:4")]
        graph: String,
        #[arg(long, value_enum, default_value = "trail")]
        objective: Objective,
        /// Sample --trials orderings instead of enumerating all
        #[arg(long)]
        sampled: bool,
        /// Fix label 1 on one edge (complete graphs only)
        #[arg(long)]
        symmetry: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// First-moment table over an (n, p, k) grid
    Expectations(Common),
    /// Chop a long path into k-edge segments and count increasing ones
    SparseProbe(Common),
}

fn write_out(settings: &FileConfig, bytes: &[u8]) -> Result<()> {
    match settings.out.as_deref() {
        Some(path) if path != "-" => fs::write(path, bytes).map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        }),
        _ => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Error::Io { path: "<stdout>".into(), source: e }),
    }
}

fn tabulate<T: Serialize>(settings: &FileConfig, rows: &[T]) -> Result<()> {
    let bytes = match settings.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            w.into_inner().map_err(|e| Error::Config(e.to_string()))?
        }
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(rows)?;
            v.push(b'\n');
            v
        }
    };
    write_out(settings, &bytes)
}

fn sweep(common: &Common, algorithm: Algorithm, default_n: &str, default_p: &str) -> Result<bool> {
    let settings = common.settings()?;
    let cfg = settings.experiment_config(algorithm, default_n, default_p)?;
    let records = run_experiment(&cfg)?;
    emit(
        &records,
        settings.format.unwrap_or(Format::Csv),
        settings.out.as_deref().map(Path::new),
    )?;
    let failed = records.iter().filter(|r| r.is_failure()).count();
    if failed > 0 {
        eprintln!("{failed} of {} cells failed", records.len());
    }
    Ok(settings.strict.unwrap_or(false) && failed > 0)
}

fn parse_graph_spec(spec: &str, seed: u64) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Config(format!("bad graph spec '{spec}'")));
    match parts.as_slice() {
        ["complete", n] => Ok(Graph::complete(num(n)?)),
        ["cycle", n] => Ok(Graph::cycle(num(n)?)),
        ["path", n] => Ok(Graph::path(num(n)?)),
        ["star", n] => Ok(Graph::star(num(n)?)),
        ["petersen"] => Ok(Graph::petersen()),
        ["gnm", n, m] => gen_gnm(num(n)?, num(m)? as u64, &Seed::new(seed)),
        _ => {
            let text = fs::read_to_string(spec).map_err(|e| Error::Io { path: spec.into(), source: e })?;
            Ok(parse_graph(&text)?.0)
        }
    }
}

#[derive(Serialize)]
struct ExpectationRow {
    n: u64,
    p: f64,
    k: u64,
    ln_paths: f64,
    paths: f64,
    ln_trails_upper: f64,
    trails_upper: f64,
    threshold: f64,
    first_moment_crossing: Option<u64>,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::SimulateTrail(c) => sweep(&c, Algorithm::TrailDp, "250:2000:x2", "1"),
        Command::SimulatePath(c) => sweep(&c, Algorithm::PathSearch, "1000", "3/n"),
        Command::Construct { common, mode } => {
            let (alg, p) = match mode {
                Objective::Trail => (Algorithm::ConstructTrail, "1"),
                Objective::Path => (Algorithm::ConstructPath, "4ln/n"),
            };
            sweep(&common, alg, "2000", p)
        }
        Command::GirthPrune(c) => sweep(&c, Algorithm::GirthPrune, "10000", "12/n"),
        Command::SparseProbe(c) => sweep(&c, Algorithm::SparseProbe, "100000", "2/n"),
        Command::TreeLemma {
            common,
            branching,
            depth,
            delta,
        } => {
            let settings = common.settings()?;
            let ds = parse_int_grid(&branching)?;
            let ks = depth.as_deref().map(parse_int_grid).transpose()?;
            let mut rows = Vec::new();
            for &d in &ds {
                let depths = match &ks {
                    Some(ks) => ks.clone(),
                    None => vec![(0.8 * std::f64::consts::E * d as f64).round() as u64],
                };
                for &k in &depths {
                    let seed = Seed::new(settings.seed.unwrap_or(0)).derive_all(&[d, k]);
                    let mut cfg = TreeSearchConfig::new(d as usize, k as usize, settings.trials.unwrap_or(1000), seed)?;
                    if let Some(b) = settings.budget {
                        cfg.expansion_cap = b;
                    }
                    let mut row = run_tree_search(&cfg, delta);
                    row.estimate = round_sig6(row.estimate);
                    row.stderr = round_sig6(row.stderr);
                    row.q = round_sig6(row.q);
                    rows.push(row);
                }
            }
            tabulate(&settings, &rows)?;
            Ok(settings.strict.unwrap_or(false) && rows.iter().any(|r| r.capped > 0))
        }
        Command::WorstCase {
            common,
            graph,
            objective,
            sampled,
            symmetry,
            checkpoint,
        } => {
            let settings = common.settings()?;
            let seed = settings.seed.unwrap_or(0);
            let g = parse_graph_spec(&graph, seed)?;
            let start = Instant::now();
            let result = if sampled {
                if let Objective::Path = objective {
                    return Err(Error::Config("sampling is only available for trails".into()));
                }
                m_star_sampled_upper(&g, settings.trials.unwrap_or(10_000), &Seed::new(seed))
            } else {
                let opts = ExhaustiveOptions {
                    symmetry_reduction: symmetry,
                    checkpoint,
                    threads: settings.threads,
                };
                match objective {
                    Objective::Trail => m_star_exhaustive_with(&g, &opts)?,
                    Objective::Path => m_path_exhaustive_with(&g, &opts)?,
                }
            };
            let name = match objective {
                Objective::Trail => "m*",
                Objective::Path => "m",
            };
            let bound = if sampled { "<=" } else { "=" };
            println!("{name}(G) {bound} {}", result.value);
            println!("witness labels: {:?}", result.witness_ordering.labels());
            println!("orderings examined: {}", result.orderings_examined);
            println!("average degree: {}", gk_bound(&g));
            println!("wall time: {:.3?}", start.elapsed());
            Ok(false)
        }
        Command::Expectations(c) => {
            let settings = c.settings()?;
            let ns = parse_int_grid(&settings.n.as_ref().map_or("1000".into(), |g| g.to_string()))?;
            let ps = parse_p_grid(&settings.p.as_ref().map_or("0.01".into(), |g| g.to_string()))?;
            let k_text = c.k.clone().or(settings.k.map(|k| k.to_string()));
            let ks = parse_int_grid(k_text.as_deref().unwrap_or("1:40:+1"))?;
            let mut rows = Vec::new();
            for &n in &ns {
                for p in &ps {
                    let p = p.at(n as usize);
                    for &k in &ks {
                        let q = RegimeQuery::new(n, p, k)?;
                        let paths = expected_increasing_paths(&q);
                        let trails = expected_increasing_trails_upper(&q);
                        rows.push(ExpectationRow {
                            n,
                            p,
                            k,
                            ln_paths: round_sig6(paths.ln),
                            paths: round_sig6(paths.value),
                            ln_trails_upper: round_sig6(trails.ln),
                            trails_upper: round_sig6(trails.value),
                            threshold: round_sig6(trail_threshold(n, p, settings.eps.unwrap_or(0.0))),
                            first_moment_crossing: first_moment_crossing(n, p),
                        });
                    }
                }
            }
            tabulate(&settings, &rows)?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

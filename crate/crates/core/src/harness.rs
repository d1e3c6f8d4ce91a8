//! Seeded experiment sweeps: grid parsing, parallel trials, CSV/JSON output.
//!
//! Every cell `(grid point, trial)` draws its randomness from
//! `Seed::new(root).derive_all(&[HARNESS, grid index, trial])`, and results
//! are collected in cell order, so output bytes do not depend on the number
//! of worker threads. Wall time is only measured when asked for; otherwise
//! the `ms` column is 0 and output stays reproducible.

use std::f64::consts::E;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path as FsPath;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{gen_gnm, gen_gnp, pair_count};
use crate::ordering::OrderedGraph;
use crate::seed::{stream, Seed};
use crate::solvers::path_search::{longest_increasing_path_exact, OnExhaust, SearchBudget};
use crate::solvers::sparse_probe::sparse_probe;
use crate::solvers::trail_dp::longest_increasing_trail;
use crate::solvers::walk::{validate_path, validate_trail};
use crate::stitching::{run_stitching, FailureStage, Mode, ScheduleConfig, Status};
use crate::subgraph::{extract_high_girth_core, PruneConfig};

pub const CSV_HEADER: &str = "experiment,n,p,seed,trial,algorithm,length,ratio,ms,aux";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    TrailDp,
    PathSearch,
    ConstructTrail,
    ConstructPath,
    SparseProbe,
    GirthPrune,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::TrailDp => "trail-dp",
            Algorithm::PathSearch => "path-search",
            Algorithm::ConstructTrail => "construct-trail",
            Algorithm::ConstructPath => "construct-path",
            Algorithm::SparseProbe => "sparse-probe",
            Algorithm::GirthPrune => "girth-prune",
        }
    }
}

/// Edge probability, possibly scaled by `n`: `0.3`, `3/n` or `4ln/n`
/// (meaning `4 ln n / n`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum PSpec {
    Fixed(f64),
    OverN(f64),
    LogOverN(f64),
}

impl PSpec {
    pub fn at(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            PSpec::Fixed(p) => p,
            PSpec::OverN(c) => (c / n).min(1.0),
            PSpec::LogOverN(c) => (c * n.ln() / n).min(1.0),
        }
    }
}

impl FromStr for PSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse edge probability '{s}'"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        if let Some(c) = s.strip_suffix("ln/n") {
            return Ok(PSpec::LogOverN(if c.is_empty() { 1.0 } else { num(c)? }));
        }
        if let Some(c) = s.strip_suffix("/n") {
            return Ok(PSpec::OverN(num(c)?));
        }
        let p = num(s)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(PSpec::Fixed(p))
    }
}

impl fmt::Display for PSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PSpec::Fixed(p) => write!(f, "{p}"),
            PSpec::OverN(c) => write!(f, "{c}/n"),
            PSpec::LogOverN(c) => write!(f, "{c}ln/n"),
        }
    }
}

impl TryFrom<String> for PSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PSpec> for String {
    fn from(p: PSpec) -> String {
        p.to_string()
    }
}

/// Parses `250,500,1000`, `250:2000:x2` (geometric) or `10:50:+10`
/// (arithmetic); items of a list may themselves be ranges.
pub fn parse_int_grid(text: &str) -> Result<Vec<u64>> {
    let bad = |why: &str| Error::Config(format!("grid '{text}': {why}"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        let int = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("not an integer"));
        match parts.as_slice() {
            [v] => out.push(int(v)?),
            [lo, hi, step] => {
                let (lo, hi) = (int(lo)?, int(hi)?);
                let step = step.trim();
                let mut v = lo;
                if let Some(f) = step.strip_prefix('x') {
                    let f = int(f)?;
                    if f < 2 || lo == 0 {
                        return Err(bad("geometric ranges need a factor >= 2 and a positive start"));
                    }
                    while v <= hi {
                        out.push(v);
                        v = v.saturating_mul(f);
                    }
                } else {
                    let d = int(step.strip_prefix('+').unwrap_or(step))?;
                    if d == 0 {
                        return Err(bad("step must be positive"));
                    }
                    while v <= hi {
                        out.push(v);
                        v = v.saturating_add(d);
                    }
                }
            }
            _ => return Err(bad("expected v, v,w or lo:hi:xF")),
        }
    }
    if out.is_empty() {
        return Err(bad("empty"));
    }
    Ok(out)
}

pub fn parse_p_grid(text: &str) -> Result<Vec<PSpec>> {
    let v: Vec<PSpec> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Config("empty probability grid".into()));
    }
    Ok(v)
}

/// How the edges of a cell are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Density {
    P(PSpec),
    M(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub algorithm: Algorithm,
    pub n: Vec<u64>,
    pub density: Vec<Density>,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses all cores. Output does not depend on it.
    pub threads: Option<usize>,
    /// Expansion budget for path searches.
    pub budget: u64,
    pub timing: bool,
    /// Segment length for the sparse probe; defaults to `round(ln n / ln ln n)`.
    pub probe_k: Option<usize>,
    pub girth_target: usize,
    pub prune_eps: f64,
}

impl ExperimentConfig {
    pub fn new(experiment: &str, algorithm: Algorithm, n: Vec<u64>, density: Vec<Density>) -> Self {
        ExperimentConfig {
            experiment: experiment.into(),
            algorithm,
            n,
            density,
            trials: 1,
            seed: 0,
            threads: None,
            budget: SearchBudget::default().max_expansions,
            timing: false,
            probe_k: None,
            girth_target: 6,
            prune_eps: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() || self.density.is_empty() {
            return Err(Error::Config("empty grid".into()));
        }
        if self.n.contains(&0) {
            return Err(Error::NoVertices);
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if self.budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        PruneConfig::new(self.girth_target, self.prune_eps)?;
        for d in &self.density {
            if let Density::P(PSpec::OverN(c) | PSpec::LogOverN(c)) = d {
                if *c < 0.0 {
                    return Err(Error::InvalidProbability(*c));
                }
            }
        }
        Ok(())
    }

    /// Grid points in output order: `n` outer, density inner.
    pub fn grid(&self) -> Vec<(u64, Density)> {
        self.n
            .iter()
            .flat_map(|&n| self.density.iter().map(move |&d| (n, d)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub n: u64,
    pub p: f64,
    pub seed: u64,
    pub trial: u64,
    pub algorithm: String,
    pub length: u64,
    /// `length / (e n p)`.
    pub ratio: f64,
    pub ms: f64,
    pub aux: Value,
}

impl ExperimentRecord {
    /// A cell that could not produce a result.
    pub fn is_failure(&self) -> bool {
        self.aux.get("error").is_some()
    }
}

/// Rounds to 6 significant digits, so the printed form reads back exactly.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// C-style `%g`: 6 significant digits, trailing zeros dropped.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        trim(&format!("{x:.*}", (5 - exp) as usize))
    }
}

fn cell_seed(root: u64, grid_index: usize, trial: u64) -> Seed {
    Seed::new(root).derive_all(&[stream::HARNESS, grid_index as u64, trial])
}

fn run_cell(cfg: &ExperimentConfig, grid_index: usize, n: u64, density: Density, trial: u64) -> ExperimentRecord {
    let seed = cell_seed(cfg.seed, grid_index, trial);
    let nu = n as usize;
    let pairs = pair_count(nu);
    let p = match density {
        Density::P(spec) => spec.at(nu),
        Density::M(m) if pairs > 0 => m as f64 / pairs as f64,
        Density::M(_) => 0.0,
    };
    let start = Instant::now();
    let outcome = cell_body(cfg, nu, density, p, &seed);
    let ms = if cfg.timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let (length, aux) = outcome.unwrap_or_else(|e| (0, json!({ "error": e.to_string() })));
    let scale = E * n as f64 * p;
    ExperimentRecord {
        experiment: cfg.experiment.clone(),
        n,
        p: round_sig6(p),
        seed: cfg.seed,
        trial,
        algorithm: cfg.algorithm.name().into(),
        length: length as u64,
        ratio: round_sig6(if scale > 0.0 { length as f64 / scale } else { 0.0 }),
        ms: round_sig6(ms),
        aux,
    }
}

fn cell_body(cfg: &ExperimentConfig, n: usize, density: Density, p: f64, seed: &Seed) -> Result<(usize, Value)> {
    let graph = match density {
        Density::P(_) => gen_gnp(n, p, &seed.derive(stream::GRAPH))?,
        Density::M(m) => gen_gnm(n, m, &seed.derive(stream::GRAPH))?,
    };
    let m = graph.edge_count();
    if cfg.algorithm == Algorithm::GirthPrune {
        let prune = PruneConfig::new(cfg.girth_target, cfg.prune_eps)?;
        let r = extract_high_girth_core(&graph, &prune).report;
        return Ok((
            r.retained,
            json!({
                "m": m,
                "retained_fraction": round_sig6(r.retained_fraction),
                "core_min_degree": r.core_min_degree,
                "degree_floor": round_sig6(r.degree_floor),
                "deleted_cycle": r.deleted_cycle_vertices.len(),
                "deleted_low_degree": r.deleted_low_degree.len(),
                "absorbed": r.absorbed_sequence.len(),
            }),
        ));
    }
    let og = OrderedGraph::random(graph, &seed.derive(stream::ORDERING));
    match cfg.algorithm {
        Algorithm::TrailDp => {
            let t = longest_increasing_trail(&og);
            Ok((t.len(), json!({ "m": m })))
        }
        Algorithm::PathSearch => {
            let budget = SearchBudget::new(cfg.budget, OnExhaust::ReturnBest)?;
            let out = longest_increasing_path_exact(&og, budget)?;
            validate_path(&og, &out.path).map_err(|d| Error::Inconsistent(d.to_string()))?;
            Ok((
                out.path.len(),
                json!({ "m": m, "exact": out.exact, "expansions": out.expansions }),
            ))
        }
        Algorithm::ConstructTrail | Algorithm::ConstructPath => {
            let mode = if cfg.algorithm == Algorithm::ConstructPath {
                Mode::Path
            } else {
                Mode::Trail
            };
            let mut sched = ScheduleConfig::defaults(n, m, mode)?;
            sched.search_budget = sched.search_budget.min(cfg.budget);
            let run = run_stitching(&og, &sched)?;
            let check = match mode {
                Mode::Trail => validate_trail(&og, &run.trail),
                Mode::Path => validate_path(&og, &run.trail),
            };
            check.map_err(|d| Error::Inconsistent(d.to_string()))?;
            let count = |stage: FailureStage| run.rounds.iter().filter(|r| r.failure_stage == stage).count();
            Ok((
                run.trail.len(),
                json!({
                    "m": m,
                    "rounds": run.rounds.len(),
                    "successful": run.rounds.iter().filter(|r| r.status == Status::Success).count(),
                    "below_target": run.rounds.iter().filter(|r| r.below_target).count(),
                    "failed_core": count(FailureStage::Core),
                    "failed_reachable_set": count(FailureStage::ReachableSet),
                    "failed_connector": count(FailureStage::Connector),
                }),
            ))
        }
        Algorithm::SparseProbe => {
            let k = match cfg.probe_k {
                Some(k) => k,
                None => crate::analytics::sparse_threshold(n as u64)?.round().max(1.0) as usize,
            };
            let probe = sparse_probe(&og, k);
            let expected = probe.segments as f64 * 2.0 / statrs::function::factorial::factorial(k as u64);
            Ok((
                probe.increasing_segments,
                json!({
                    "m": m,
                    "k": k,
                    "path_length": probe.path_length,
                    "segments": probe.segments,
                    "expected": round_sig6(expected),
                }),
            ))
        }
        Algorithm::GirthPrune => unreachable!("handled above"),
    }
}

/// Runs every `(grid point, trial)` cell. Rows come back sorted by grid
/// point, then trial; cell-level failures are rows with an `error` entry.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let cells: Vec<(usize, u64, Density, u64)> = cfg
        .grid()
        .into_iter()
        .enumerate()
        .flat_map(|(g, (n, d))| (0..cfg.trials).map(move |t| (g, n, d, t)))
        .collect();
    let run = || {
        cells
            .par_iter()
            .map(|&(g, n, d, t)| run_cell(cfg, g, n, d, t))
            .collect::<Vec<_>>()
    };
    match cfg.threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run)),
        None => Ok(run()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format '{s}' (csv or json)"))),
        }
    }
}

pub fn write_records<W: Write>(records: &[ExperimentRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER.split(','))?;
            for r in records {
                w.write_record([
                    r.experiment.clone(),
                    r.n.to_string(),
                    format_g(r.p),
                    r.seed.to_string(),
                    r.trial.to_string(),
                    r.algorithm.clone(),
                    r.length.to_string(),
                    format_g(r.ratio),
                    format_g(r.ms),
                    serde_json::to_string(&r.aux)?,
                ])?;
            }
            w.flush().map_err(|e| Error::io("<output>", e))?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out).map_err(|e| Error::io("<output>", e))?;
        }
    }
    Ok(())
}

/// Writes to `path`, or to stdout when `path` is `None` or `-`.
pub fn emit(records: &[ExperimentRecord], format: Format, path: Option<&FsPath>) -> Result<()> {
    match path {
        Some(p) if p != FsPath::new("-") => {
            let mut buf = Vec::new();
            write_records(records, format, &mut buf)?;
            fs::write(p, buf).map_err(|e| Error::io(p, e))
        }
        _ => write_records(records, format, std::io::stdout().lock()),
    }
}

/// Settings readable from a TOML file; every key mirrors a command-line
/// flag and flags win.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<String>,
    pub n: Option<GridText>,
    pub p: Option<GridText>,
    pub m: Option<GridText>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<String>,
    pub threads: Option<usize>,
    pub budget: Option<u64>,
    pub strict: Option<bool>,
    pub timing: Option<bool>,
    pub k: Option<usize>,
    pub eps: Option<f64>,
}

/// A grid written either as text (`"250:2000:x2"`) or a bare number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridText {
    Int(u64),
    Float(f64),
    Text(String),
}

impl fmt::Display for GridText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridText::Int(v) => write!(f, "{v}"),
            GridText::Float(v) => write!(f, "{v}"),
            GridText::Text(s) => f.write_str(s),
        }
    }
}

impl FileConfig {
    pub fn load(path: &FsPath) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: FileConfig) -> FileConfig {
        FileConfig {
            experiment: over.experiment.or(self.experiment),
            n: over.n.or(self.n),
            p: over.p.or(self.p),
            m: over.m.or(self.m),
            trials: over.trials.or(self.trials),
            seed: over.seed.or(self.seed),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            threads: over.threads.or(self.threads),
            budget: over.budget.or(self.budget),
            strict: over.strict.or(self.strict),
            timing: over.timing.or(self.timing),
            k: over.k.or(self.k),
            eps: over.eps.or(self.eps),
        }
    }

    /// Builds a sweep for `algorithm`; `default_n` and `default_p` fill
    /// missing grids.
    pub fn experiment_config(&self, algorithm: Algorithm, default_n: &str, default_p: &str) -> Result<ExperimentConfig> {
        let n = parse_int_grid(&self.n.as_ref().map_or(default_n.to_string(), |g| g.to_string()))?;
        let density = match (&self.m, &self.p) {
            (Some(_), Some(_)) => return Err(Error::Config("give either p or m, not both".into())),
            (Some(m), None) => parse_int_grid(&m.to_string())?.into_iter().map(Density::M).collect(),
            (None, p) => parse_p_grid(&p.as_ref().map_or(default_p.to_string(), |g| g.to_string()))?
                .into_iter()
                .map(Density::P)
                .collect(),
        };
        let mut cfg = ExperimentConfig::new(
            self.experiment.as_deref().unwrap_or(algorithm.name()),
            algorithm,
            n,
            density,
        );
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        cfg.threads = self.threads;
        cfg.timing = self.timing.unwrap_or(false);
        cfg.probe_k = self.k;
        if algorithm == Algorithm::GirthPrune {
            if let Some(k) = self.k {
                cfg.girth_target = k;
            }
        }
        if let Some(eps) = self.eps {
            cfg.prune_eps = eps;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("requested {requested} edges but only {max} pairs exist")]
    TooManyEdges { requested: u64, max: u64 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("adjacency index is inconsistent with the edge list: {0}")]
    Inconsistent(String),
    #[error("labels are not a bijection onto 1..={0}")]
    NotABijection(usize),
    #[error("explicit tree would need {required} edges, budget is {budget}; use the implicit tree search instead")]
    TreeTooLarge { required: u128, budget: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has {edges} edges, exhaustive routine is limited to {limit}")]
    SizeGuard { edges: usize, limit: usize },
    #[error("search budget of {expansions} expansions exhausted (best length found {best})")]
    BudgetExhausted { expansions: u64, best: usize },
    #[error("expansion cap of {cap} reached")]
    ExpansionCap { cap: u64 },
    #[error("parameter outside the formula's domain: {0}")]
    Domain(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

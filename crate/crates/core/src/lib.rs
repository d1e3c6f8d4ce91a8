pub mod analytics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod ordering;
pub mod seed;
pub mod solvers;
pub mod stitching;
pub mod subgraph;
pub mod textio;
pub mod tree_lemma;
pub mod worst_case;

pub use error::{Error, Result};
pub use seed::Seed;

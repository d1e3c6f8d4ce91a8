//! Short-cycle removal and high-girth core extraction.

pub mod girth;
pub mod prune;

pub use girth::{count_short_cycles, girth, girth_below};
pub use prune::{extract_high_girth_core, HighGirthCore, PruneConfig, PruneReport};

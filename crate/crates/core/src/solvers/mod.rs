//! Exact solvers, brute-force oracles and walk validators.

pub mod brute;
pub mod path_search;
pub mod sparse_probe;
pub mod trail_dp;
pub mod walk;

pub use brute::{enumerate_paths_bruteforce, enumerate_trails_bruteforce, BRUTEFORCE_EDGE_LIMIT};
pub use path_search::{
    longest_increasing_path_exact, IncreasingPathSearch, OnExhaust, PathSearchOutcome, RootLimits, RootSearch,
    SearchBudget,
};
pub use sparse_probe::{long_path_ignoring_labels, sparse_probe, SparseProbe};
pub use trail_dp::{
    longest_increasing_trail, longest_increasing_trail_length, longest_increasing_trail_reals,
    trail_length_for_order,
};
pub use walk::{check_walk, validate_path, validate_trail, Path, Trail, WalkDefect};

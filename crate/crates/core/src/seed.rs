//! Splittable, reproducible seeding.
//!
//! A [`Seed`] is a 64-bit root plus a derivation path (for example
//! `[module id, grid index, trial index]`). The path is folded into a single
//! 64-bit key with the SplitMix64 finalizer and that key seeds a
//! [`ChaCha8Rng`]. Two seeds with the same root and path always yield the
//! same stream; changing any path component gives an unrelated stream, so
//! parallel trials stay reproducible regardless of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// The generator behind every random stream in this crate.
pub type Rng = ChaCha8Rng;

/// Stream tags used as the first path component by each subsystem.
pub mod stream {
    pub const GRAPH: u64 = 1;
    pub const ORDERING: u64 = 2;
    pub const TREE: u64 = 3;
    pub const SECOND_MOMENT: u64 = 4;
    pub const WORST_CASE: u64 = 5;
    pub const HARNESS: u64 = 6;
    pub const STITCHING: u64 = 7;
    pub const ANALYTICS: u64 = 8;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub root: u64,
    pub path: Vec<u64>,
}

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Combines a running key with one more component.
#[inline]
pub fn combine(key: u64, component: u64) -> u64 {
    mix64(key ^ mix64(component.wrapping_add(0x6A09_E667_F3BC_C909)))
}

/// Maps 64 random bits to a uniform double in `[0, 1)` using the top 53 bits.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl Seed {
    pub fn new(root: u64) -> Self {
        Seed {
            root,
            path: Vec::new(),
        }
    }

    /// A child seed with `component` appended to the path.
    pub fn derive(&self, component: u64) -> Self {
        let mut path = self.path.clone();
        path.push(component);
        Seed {
            root: self.root,
            path,
        }
    }

    pub fn derive_all(&self, components: &[u64]) -> Self {
        let mut path = self.path.clone();
        path.extend_from_slice(components);
        Seed {
            root: self.root,
            path,
        }
    }

    /// The folded 64-bit key identifying this stream.
    pub fn key(&self) -> u64 {
        self.path
            .iter()
            .fold(mix64(self.root), |acc, &c| combine(acc, c))
    }

    pub fn rng(&self) -> Rng {
        ChaCha8Rng::seed_from_u64(self.key())
    }
}

impl From<u64> for Seed {
    fn from(root: u64) -> Self {
        Seed::new(root)
    }
}

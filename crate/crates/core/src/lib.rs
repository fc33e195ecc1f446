//! Exact computation of N-fold sumsets `N A` of finite sets of integers and
//! integer vectors, together with their exceptional sets.
//!
//! [`one_d`] handles `A ⊂ Z`, [`geometry`] provides exact rational hulls,
//! cones and lattices, and [`nd`] handles `A ⊂ Z^n`.

pub mod bitset;
pub mod error;
pub mod format;
pub mod geometry;
pub mod nd;
pub mod one_d;

pub use error::{Error, Result};

/// Size limits for the enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest interval length `b * N` for one-dimensional bitmaps.
    pub max_range: u64,
    /// Largest number of lattice points held in one set.
    pub max_points: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_range: 10_000_000,
            max_points: 10_000_000,
        }
    }
}

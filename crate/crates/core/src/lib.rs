//! Construction and exhaustive verification of Schubert codes: linear
//! codes obtained by evaluating exterior forms at the points of a
//! Schubert variety in a Grassmannian over GF(q).
//!
//! The crate is organized bottom-up:
//! - [`gf`]: GF(q) arithmetic (q <= 256) and exact dense linear algebra;
//! - [`exterior`]: sparse multivectors, wedge products, annihilators,
//!   decomposability, and maximal-minor coordinates of subspaces;
//! - [`schubert`]: dimension sequences, point enumeration in canonical
//!   cell order, membership tests, and the closed-form counting
//!   formulas (length, dimension, minimum-weight-word count);
//! - [`code`]: the evaluation code itself, exhaustive weight
//!   distributions, minimum-weight censuses, and structural reports;
//! - [`verify`]: per-instance check batteries comparing every formula
//!   against the exhaustive oracles, with machine-readable reports.
//!
//! All enumeration is budgeted: operations that would enumerate more
//! than the configured number of messages or subspaces refuse to run
//! instead of silently truncating.

pub mod code;
pub mod error;
pub mod exterior;
pub mod gf;
pub mod sample;
pub mod schubert;
pub mod verify;

pub use error::{Error, Result};

/// Enumeration ceilings. `messages` caps exhaustive codeword walks
/// (q^k messages); `subspaces` caps Grassmannian enumerations.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub messages: u64,
    pub subspaces: u64,
}

pub const DEFAULT_MESSAGE_BUDGET: u64 = 1 << 26;
pub const DEFAULT_SUBSPACE_BUDGET: u64 = 10_000_000;

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            messages: DEFAULT_MESSAGE_BUDGET,
            subspaces: DEFAULT_SUBSPACE_BUDGET,
        }
    }
}

//! Bounds on deletion-correcting codes.
//!
//! The central object is the deletion hypergraph: vertices are strings of
//! length `n - s`, and each string `y` of length `n` is a hyperedge covering
//! its `s`-deletion set. Codes are matchings, so the LP relaxation of the
//! matching problem and any feasible fractional transversal bound the best
//! code size from above.

pub mod bounds;
pub mod codebooks;
pub mod counting;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod lp;
pub mod qary;
pub mod rate;
pub mod report;
pub mod rll;

pub use error::{Error, Result};
pub use qary::{QaryString, StringSet};

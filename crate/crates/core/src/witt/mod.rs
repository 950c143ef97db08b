//! Truncated big Witt vectors over exact rings.

mod checks;
pub mod series;
mod truncation;
mod vector;

pub use checks::{check_index_diagram, check_ring_axioms, random_vector, DiagramReport, RestrictionMode, WittReport};
pub use truncation::{divisors, TruncationSet};
pub use vector::WittVector;

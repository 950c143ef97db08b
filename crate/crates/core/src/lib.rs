//! Finite models of simplicial, cyclic and epicyclic structure.

pub mod barcat;
pub mod check;
pub mod error;
pub mod homology;
pub mod indexcat;
pub mod ring;
pub mod schema;
pub mod simplicial;
pub mod subdivision;
pub mod suite;
pub mod trace;
pub mod witt;

pub use error::{Error, Result};

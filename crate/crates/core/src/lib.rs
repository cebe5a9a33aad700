//! Exact solver for dimension-one systems of autonomous algebraic ODEs.

pub mod algebraic;
pub mod arith;
pub mod chains;
pub mod error;
pub mod parse;
pub mod poly;
pub mod puiseux;
pub mod reduction;
pub mod report;
pub mod series;
pub mod system;
pub mod verify;

pub use error::{AodeError, Result};
pub use system::DiffSystem;

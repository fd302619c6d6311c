//! Combinatorial nerve theorems, checked on finite instances.

pub mod blowup;
pub mod complex;
pub mod corpus;
pub mod covers;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod morse;
pub mod verify;

pub use error::{NerveError, Result};

pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod sequence;
pub mod subword;
pub mod sweep;
pub mod walk;

pub use error::{Error, Limits, Result};

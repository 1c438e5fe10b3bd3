//! Exact symmetric-function engine for Waring-type expansions on the
//! transformed alphabet `X/(1-tX)` and the identities built on them.

pub mod arith;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod symfunc;

pub use error::{Error, Result};

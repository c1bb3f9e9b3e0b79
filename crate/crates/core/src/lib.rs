//! Rough-set approximation operators, set-valued precision/accuracy measures,
//! a finite partial-algebra axiom checker, and classical classifier metrics.

pub mod approximations;
pub mod baseline_metrics;
pub mod cli;
pub mod error;
pub mod limits;
pub mod measures;
pub mod partial_algebra;
pub mod rough_core;

pub use error::{Error, Result};

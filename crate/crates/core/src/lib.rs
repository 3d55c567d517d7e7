//! Type-token analysis for Heaps' law with a quadratic log-log correction.
//!
//! The crate is split along the analysis pipeline:
//!
//! - [`corpus`]: Gutenberg boilerplate stripping, tokenization, type census.
//! - [`curves`]: type-token observations (prefix, partition and log-sampled
//!   windows), replicate aggregation and local log-log slopes.
//! - [`regress`]: linear / quadratic least squares in log-log space with
//!   R², adjusted R², AIC, effective exponent and turning point.
//! - [`urn`]: the random ball-drawing model, evaluated exactly, including the
//!   pseudo-weight expansion whose pseudo-variance is the log-log curvature.

pub mod corpus;
pub mod curves;
mod error;
pub mod format;
pub mod regress;
pub mod urn;

pub use error::{Error, Result};

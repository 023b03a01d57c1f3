//! Query-limited one-sided matching.
//!
//! Agents report ordinal rankings over items and answer a small number of
//! value queries. The crate ships the algorithms that turn those answers into
//! matchings with bounded distortion, the adversarial instances that lower
//! bound any such algorithm, exact and approximate welfare solvers, and a
//! generalized threshold framework for graph maximization problems.

pub mod adversary;
pub mod algorithms;
pub mod error;
pub mod graphmax;
pub mod io;
pub mod oracle;
pub mod profile;
pub mod solvers;

pub use error::{Error, Result};
pub use oracle::{AnswerPolicy, CountingOracle, QueryOracle, TranscriptEntry, TruthfulPolicy};
pub use profile::{
    derive_ordinal, distortion_ratio, social_welfare, Matching, OrdinalProfile, SimulatedProfile,
    ValuationClass, ValuationProfile,
};

/// Absolute tolerance used for every welfare and value comparison.
pub const TOL: f64 = 1e-9;

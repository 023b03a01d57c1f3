//! Adversarial instances that lower-bound the distortion of query-limited
//! algorithms.
//!
//! [`LowerBoundFamily`] answers queries adaptively with fixed per-set values;
//! once the algorithm commits to a matching, [`finalize_profile`] builds a
//! full valuation profile consistent with every answer that makes the
//! algorithm look bad. [`thm1_certify`] and [`thm4_certify`] build the two
//! fixed constructions for ordinal algorithms and for threshold step
//! functions on well-structured instances.

mod family;
mod finalize;
mod thm1;
mod thm4;

pub use family::{AdversaryPolicy, LowerBoundFamily};
pub use finalize::{finalize_profile, AgentType, Finalized};
pub use thm1::{thm1_certify, thm1_ordinal_profile, Thm1Certificate};
pub use thm4::{thm4_certify, Thm4Certificate};

use crate::ValuationProfile;

/// Positions where `row` increases along `0..n`. The adversarial families
/// rank items by index for every agent, so any hit breaks ordinal
/// consistency.
pub(crate) fn monotonicity_breaks(profile: &ValuationProfile) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..profile.n() {
        let row = profile.row(i);
        for j in 1..row.len() {
            if row[j] > row[j - 1] {
                out.push((i, j));
            }
        }
    }
    out
}

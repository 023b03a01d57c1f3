use std::collections::BTreeMap;
use std::ops::Range;

use crate::{Error, OrdinalProfile, QueryOracle, Result};

/// `base^{-ell/(lambda+1)}`. Every threshold in the crate goes through this
/// so revealed values and thresholds built from the same exponents compare
/// exactly.
pub fn alpha(base: f64, ell: usize, lambda: usize) -> f64 {
    base.powf(-(ell as f64) / (lambda as f64 + 1.0))
}

/// One agent's threshold step function over a ranked list.
///
/// Positions are 0-based along the ranked list. Set `Q_0` is position 0;
/// set `Q_l` for `l >= 1` is the interval `boundaries[l-1]+1 ..= boundaries[l]`,
/// where `boundaries[l]` is the last position whose value is at least
/// `alpha_l * v_star`. Positions past `boundaries[lambda]` belong to no set.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdPartition {
    pub v_star: f64,
    pub alphas: Vec<f64>,
    pub boundaries: Vec<usize>,
}

impl ThresholdPartition {
    pub fn lambda(&self) -> usize {
        self.alphas.len() - 1
    }

    /// Position range of `Q_ell`.
    pub fn set_range(&self, ell: usize) -> Range<usize> {
        if ell == 0 {
            0..1
        } else {
            self.boundaries[ell - 1] + 1..self.boundaries[ell] + 1
        }
    }

    /// Which `Q_ell` contains ranked position `pos`, if any.
    pub fn class_of(&self, pos: usize) -> Option<usize> {
        if pos == 0 {
            return Some(0);
        }
        (1..self.boundaries.len()).find(|&l| self.set_range(l).contains(&pos))
    }

    /// Lower-bound value `alpha_ell * v_star` at `pos`, or 0 outside every set.
    pub fn simulated_value(&self, pos: usize) -> f64 {
        self.class_of(pos).map_or(0.0, |l| self.alphas[l] * self.v_star)
    }
}

/// Runs the threshold searches over a ranked list of `len` entries, reading
/// values through `value_at(position)`.
///
/// Each threshold is a binary search on positions for the last value at or
/// above `alpha_l * v_star`: query the middle, move right when it clears the
/// threshold. At most `ceil(log2 len)` reads per threshold.
pub fn threshold_steps<F>(len: usize, base: f64, lambda: usize, mut value_at: F) -> Result<ThresholdPartition>
where
    F: FnMut(usize) -> Result<f64>,
{
    if len == 0 {
        return Err(Error::InvalidParameters("empty ranking".into()));
    }
    let alphas: Vec<f64> = (0..=lambda).map(|l| alpha(base, l, lambda)).collect();
    let mut known: BTreeMap<usize, f64> = BTreeMap::new();
    let mut read = |pos: usize, known: &mut BTreeMap<usize, f64>| -> Result<f64> {
        if let Some(&v) = known.get(&pos) {
            return Ok(v);
        }
        let v = value_at(pos)?;
        let above = known.range(..pos).next_back().map(|(_, &x)| x);
        let below = known.range(pos + 1..).next().map(|(_, &x)| x);
        if above.is_some_and(|a| a < v) || below.is_some_and(|b| b > v) {
            return Err(Error::InconsistentOracle(format!(
                "value {v} at rank position {pos} breaks the ranking order"
            )));
        }
        known.insert(pos, v);
        Ok(v)
    };

    let v_star = read(0, &mut known)?;
    let mut boundaries = vec![0usize];
    for l in 1..=lambda {
        let threshold = alphas[l] * v_star;
        let mut lo = boundaries[l - 1];
        let mut hi = len - 1;
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if clears(read(mid, &mut known)?, threshold) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        boundaries.push(lo);
    }
    Ok(ThresholdPartition { v_star, alphas, boundaries })
}

// Relative slack of 1e-12 absorbs powf rounding when a value sits exactly on
// a threshold.
fn clears(value: f64, threshold: f64) -> bool {
    value >= threshold - 1e-12 * threshold.abs()
}

/// Threshold partition of `agent`'s full ranking with `alpha_l = n^{-l/(lambda+1)}`.
pub fn threshold_partition<O: QueryOracle + ?Sized>(
    agent: usize,
    ord: &OrdinalProfile,
    oracle: &mut O,
    lambda: usize,
) -> Result<ThresholdPartition> {
    let ranking = ord.ranking(agent);
    let n = ord.n();
    threshold_steps(n, n as f64, lambda, |pos| oracle.query(agent, ranking[pos]))
}

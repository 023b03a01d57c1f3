use std::ops::Range;

use super::{monotonicity_breaks, LowerBoundFamily};
use crate::solvers::{hungarian_max_weight, WeightMatrix};
use crate::{
    distortion_ratio, social_welfare, Error, Matching, Result, TranscriptEntry, ValuationClass,
    ValuationProfile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentType {
    /// Never queried in `A_r` and not matched into it; values on `A_r` are
    /// raised above the revealed level.
    T1 { r: usize },
    T2,
}

#[derive(Debug, Clone)]
pub struct Finalized {
    pub profile: ValuationProfile,
    pub types: Vec<AgentType>,
    /// The set whose raised values carry the witness.
    pub r: usize,
    /// `|A_r|` times the raised value: welfare the T1 agents alone can reach.
    pub t1_floor: f64,
    /// Unit-sum agents whose own item had to carry value beyond what the
    /// adversary revealed for its set; each one lifts the algorithm's welfare
    /// above `(k+1) n^{-delta}`.
    pub lifted: Vec<usize>,
    pub witness: Matching,
    pub alg_welfare: f64,
    pub witness_welfare: f64,
    pub ratio: f64,
}

/// Completes the adversary's answers into a valuation profile on which
/// `output` earns exactly `(k+1) n^{-delta}`.
pub fn finalize_profile(
    fam: &LowerBoundFamily,
    transcript: &[TranscriptEntry],
    output: &Matching,
) -> Result<Finalized> {
    let (n, k) = (fam.n(), fam.k());
    if output.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: output.len() });
    }

    let mut used = vec![0usize; n];
    let mut queried = vec![vec![false; k + 2]; n];
    let mut first_b_query = vec![n; n];
    for e in transcript {
        if e.answer != fam.answer(e.item) {
            return Err(Error::Construction(format!(
                "transcript answer {} for item {} is not the adversary's",
                e.answer, e.item
            )));
        }
        used[e.agent] += 1;
        match fam.set_of(e.item) {
            Some(l) => queried[e.agent][l] = true,
            None => first_b_query[e.agent] = first_b_query[e.agent].min(e.item),
        }
    }
    if let Some(agent) = (0..n).find(|&i| used[i] > k) {
        return Err(Error::BudgetExceeded { agent, used: used[agent], budget: k });
    }
    let assigned: Vec<Option<usize>> = (0..n).map(|i| fam.set_of(output.item_of(i))).collect();
    let open = |i: usize, l: usize| !queried[i][l] && assigned[i] != Some(l);

    let unit_sum = fam.class() == ValuationClass::UnitSum;
    let cap_of = |l: usize| if l == 1 { 1.0 } else { fam.revealed(l - 1) };
    // Agent-independent raise used to rank the candidate sets.
    let raised_level = |l: usize| {
        if unit_sum {
            let spare = 1.0 - fam.algorithm_welfare();
            cap_of(l).min(fam.revealed(l) + spare / fam.set_size(l) as f64)
        } else {
            cap_of(l)
        }
    };

    let mut best: Option<(usize, f64)> = None;
    for r in 1..=k + 1 {
        let candidates = (0..n).filter(|&i| open(i, r)).count();
        if candidates < fam.set_size(r) {
            continue;
        }
        let floor = fam.set_size(r) as f64 * raised_level(r);
        if best.is_none_or(|(_, b)| floor > b) {
            best = Some((r, floor));
        }
    }
    let (r, t1_floor) = best.ok_or_else(|| {
        Error::Construction("no set A_r has enough agents that were neither queried nor matched there".into())
    })?;

    let types: Vec<AgentType> = (0..n)
        .map(|i| {
            if open(i, r) {
                AgentType::T1 { r }
            } else if let Some(s) = (1..=k + 1).find(|&s| open(i, s)) {
                AgentType::T1 { r: s }
            } else {
                AgentType::T2
            }
        })
        .collect();

    let b = fam.b_items();
    let mut rows = Vec::with_capacity(n);
    let mut lifted = Vec::new();
    for i in 0..n {
        let mut row: Vec<f64> = (0..n).map(|j| fam.answer(j)).collect();
        if let AgentType::T1 { r } = types[i] {
            let level = if unit_sum {
                let spare = 1.0 - row.iter().sum::<f64>();
                cap_of(r).min(fam.revealed(r) + spare / fam.set_size(r) as f64)
            } else {
                cap_of(r)
            };
            for j in fam.set(r) {
                row[j] = level;
            }
        }
        if unit_sum {
            // everything from the first zero answer on stays zero
            let hard_end = first_b_query[i];
            let got = output.item_of(i);
            let soft_end = if got >= b.start { got.min(hard_end) } else { hard_end };
            let (free, tail) = (b.start..soft_end, soft_end..hard_end);
            if complete_unit_sum(fam, &mut row, free, tail, |l| open(i, l))
                .map_err(|msg| Error::Construction(format!("agent {i}: {msg}")))?
            {
                lifted.push(i);
            }
        }
        rows.push(row);
    }

    let profile = ValuationProfile::new(rows, fam.class())?;
    for e in transcript {
        if profile.value(e.agent, e.item) != e.answer {
            return Err(Error::Construction(format!(
                "agent {} item {}: profile value {} differs from answer {}",
                e.agent,
                e.item,
                profile.value(e.agent, e.item),
                e.answer
            )));
        }
    }
    if let Some(&(i, j)) = monotonicity_breaks(&profile).first() {
        return Err(Error::Construction(format!("agent {i} values increase at item {j}")));
    }

    let alg_welfare = social_welfare(output, &profile)?;
    let witness = hungarian_max_weight(&WeightMatrix::new(profile.rows().to_vec())?)?;
    let witness_welfare = social_welfare(&witness, &profile)?;
    let ratio = distortion_ratio(witness_welfare, alg_welfare)?;
    Ok(Finalized { profile, types, r, t1_floor, lifted, witness, alg_welfare, witness_welfare, ratio })
}

/// Tops `row` up to sum 1 without touching answered items or breaking the
/// non-increasing order. Mass goes to the free `B` stretch ahead of the
/// agent's own item, then to whole open sets from the bottom up. Returns
/// `true` when that is not enough and the agent's own item had to take mass.
fn complete_unit_sum(
    fam: &LowerBoundFamily,
    row: &mut [f64],
    free: Range<usize>,
    tail: Range<usize>,
    open: impl Fn(usize) -> bool,
) -> std::result::Result<bool, String> {
    let missing = |row: &[f64]| 1.0 - row.iter().sum::<f64>();
    let pour = |row: &mut [f64], range: Range<usize>| {
        let need = missing(row);
        if need <= 0.0 || range.is_empty() {
            return;
        }
        let cap = row[range.start - 1];
        let level = cap.min(row[range.start] + need / range.len() as f64);
        row[range].fill(level);
    };

    pour(row, free.clone());
    for l in (1..=fam.k() + 1).rev() {
        let need = missing(row);
        if need <= 1e-15 {
            break;
        }
        if !open(l) {
            continue;
        }
        let set = fam.set(l);
        let cap = if l == 1 { 1.0 } else { row[set.start - 1] };
        let current = row[set.start];
        let level = cap.min(current + need / set.len() as f64);
        if level > current {
            row[set].fill(level);
        }
    }
    pour(row, free);

    let mut lifted = false;
    if missing(row) > 1e-12 {
        lifted = !tail.is_empty();
        pour(row, tail);
    }
    let need = missing(row);
    if need.abs() > 1e-12 {
        return Err(format!("no consistent unit-sum completion, {need:e} mass left over"));
    }
    Ok(lifted)
}

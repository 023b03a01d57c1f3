//! Valuation and ordinal profiles, matchings, and welfare accounting.

use crate::{Error, Result, TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValuationClass {
    Unrestricted,
    UnitSum,
}

impl ValuationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ValuationClass::Unrestricted => "unrestricted",
            ValuationClass::UnitSum => "unit-sum",
        }
    }
}

impl std::str::FromStr for ValuationClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unrestricted" => Ok(ValuationClass::Unrestricted),
            "unit-sum" | "unitsum" => Ok(ValuationClass::UnitSum),
            other => Err(Error::InvalidParameters(format!("unknown valuation class `{other}`"))),
        }
    }
}

/// Full cardinal values `values[i][j]` of agent `i` for item `j`.
///
/// This is the hidden ground truth: algorithms only ever see it through a
/// [`QueryOracle`](crate::QueryOracle).
#[derive(Debug, Clone, PartialEq)]
pub struct ValuationProfile {
    n: usize,
    values: Vec<Vec<f64>>,
    class: ValuationClass,
}

impl ValuationProfile {
    pub fn new(values: Vec<Vec<f64>>, class: ValuationClass) -> Result<Self> {
        let n = values.len();
        for (i, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::InvalidProfile(format!("agent {i} has invalid value {v}")));
            }
            if class == ValuationClass::UnitSum {
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > TOL {
                    return Err(Error::InvalidProfile(format!(
                        "agent {i} values sum to {sum}, expected 1"
                    )));
                }
            }
        }
        Ok(Self { n, values, class })
    }

    pub fn unrestricted(values: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(values, ValuationClass::Unrestricted)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> ValuationClass {
        self.class
    }

    #[inline]
    pub fn value(&self, agent: usize, item: usize) -> f64 {
        self.values[agent][item]
    }

    pub fn row(&self, agent: usize) -> &[f64] {
        &self.values[agent]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// Per-agent strict rankings of items, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalProfile {
    n: usize,
    rankings: Vec<Vec<usize>>,
}

impl OrdinalProfile {
    pub fn new(rankings: Vec<Vec<usize>>) -> Result<Self> {
        let n = rankings.len();
        for (i, ranking) in rankings.iter().enumerate() {
            if !is_permutation(ranking, n) {
                return Err(Error::InvalidProfile(format!(
                    "ranking of agent {i} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Self { n, rankings })
    }

    /// Every agent ranks items `0, 1, ..., n-1` in that order.
    pub fn common(n: usize) -> Self {
        Self { n, rankings: vec![(0..n).collect(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranking(&self, agent: usize) -> &[usize] {
        &self.rankings[agent]
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    /// Rank position of every item for `agent` (inverse permutation).
    pub fn positions(&self, agent: usize) -> Vec<usize> {
        let mut pos = vec![0; self.n];
        for (p, &item) in self.rankings[agent].iter().enumerate() {
            pos[item] = p;
        }
        pos
    }

    /// True when every ranking lists values in non-increasing order.
    pub fn is_consistent_with(&self, profile: &ValuationProfile) -> bool {
        profile.n() == self.n
            && self.rankings.iter().enumerate().all(|(i, r)| {
                r.windows(2).all(|w| profile.value(i, w[0]) >= profile.value(i, w[1]))
            })
    }
}

fn is_permutation(xs: &[usize], n: usize) -> bool {
    if xs.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in xs {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Perfect matching: `assignment[i]` is the item of agent `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    assignment: Vec<usize>,
}

impl Matching {
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let n = assignment.len();
        if !is_permutation(&assignment, n) {
            return Err(Error::InvalidMatching(format!("{assignment:?} is not a bijection")));
        }
        Ok(Self { assignment })
    }

    pub fn identity(n: usize) -> Self {
        Self { assignment: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    #[inline]
    pub fn item_of(&self, agent: usize) -> usize {
        self.assignment[agent]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Inverse map: the agent holding each item.
    pub fn owners(&self) -> Vec<usize> {
        let mut owner = vec![0; self.assignment.len()];
        for (agent, &item) in self.assignment.iter().enumerate() {
            owner[item] = agent;
        }
        owner
    }

    pub fn welfare_on(&self, values: &[Vec<f64>]) -> f64 {
        self.assignment.iter().enumerate().map(|(i, &j)| values[i][j]).sum()
    }
}

/// Query-derived lower-bound values the algorithms optimize over.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedProfile {
    n: usize,
    values: Vec<Vec<f64>>,
}

impl SimulatedProfile {
    pub fn zeros(n: usize) -> Self {
        Self { n, values: vec![vec![0.0; n]; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, agent: usize, item: usize, value: f64) {
        self.values[agent][item] = value;
    }

    pub fn value(&self, agent: usize, item: usize) -> f64 {
        self.values[agent][item]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Entries where the simulated value exceeds the truth by more than
    /// [`TOL`]. Empty for any truthful run.
    pub fn domination_violations(&self, truth: &ValuationProfile) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.values[i][j] > truth.value(i, j) + TOL {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_dominated_by(&self, truth: &ValuationProfile) -> bool {
        truth.n() == self.n && self.domination_violations(truth).is_empty()
    }
}

/// Sorts each agent's items by value, descending; ties go to the lower item
/// index.
pub fn derive_ordinal(profile: &ValuationProfile) -> OrdinalProfile {
    let n = profile.n();
    let rankings = (0..n)
        .map(|i| {
            let row = profile.row(i);
            let mut items: Vec<usize> = (0..n).collect();
            // stable sort keeps ascending index among equal values
            items.sort_by(|&a, &b| row[b].total_cmp(&row[a]));
            items
        })
        .collect();
    OrdinalProfile { n, rankings }
}

pub fn social_welfare(m: &Matching, profile: &ValuationProfile) -> Result<f64> {
    if m.len() != profile.n() {
        return Err(Error::DimensionMismatch { expected: profile.n(), got: m.len() });
    }
    Ok(m.welfare_on(profile.rows()))
}

/// `opt_sw / alg_sw`, with `+inf` when only the algorithm has zero welfare
/// and `1` when both do.
pub fn distortion_ratio(opt_sw: f64, alg_sw: f64) -> Result<f64> {
    if alg_sw > opt_sw + TOL || alg_sw < -TOL {
        return Err(Error::WelfareExceedsOptimum { opt: opt_sw, alg: alg_sw });
    }
    if alg_sw.abs() <= TOL {
        return Ok(if opt_sw.abs() <= TOL { 1.0 } else { f64::INFINITY });
    }
    Ok((opt_sw / alg_sw).max(1.0))
}

use super::monotonicity_breaks;
use crate::algorithms::{threshold_partition, KwsPartition, ThresholdPartition};
use crate::solvers::{hungarian_max_weight, WeightMatrix};
use crate::{
    distortion_ratio, AnswerPolicy, CountingOracle, Error, Matching, OrdinalProfile, QueryOracle,
    Result, ValuationProfile,
};

/// Above this size the witness is the shifted matching instead of an exact
/// optimum.
const EXACT_WITNESS_MAX_N: usize = 256;

#[derive(Debug, Clone)]
pub struct Thm4Certificate {
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    /// `|A_{k+1}| / n`.
    pub xi: f64,
    pub partition: KwsPartition,
    pub output: Matching,
    pub witness: Matching,
    pub alg_welfare: f64,
    pub witness_welfare: f64,
    pub ratio: f64,
    block_of: Vec<usize>,
    /// `raise_end[i][l]`: items of `A_l` below this index are raised for
    /// agent `i`.
    raise_end: Vec<Vec<usize>>,
}

impl Thm4Certificate {
    /// `1 + eps (k-1)`.
    pub fn alg_closed_form(&self) -> f64 {
        1.0 + self.epsilon * (self.k as f64 - 1.0)
    }

    /// `(min(eps, xi) / 2) k n^{1/k}`.
    pub fn witness_floor(&self) -> f64 {
        let k = self.k as f64;
        self.epsilon.min(self.xi) / 2.0 * k * (self.n as f64).powf(1.0 / k)
    }

    pub fn value(&self, agent: usize, item: usize) -> f64 {
        let b = self.block_of[item];
        if b >= 2 && item < self.raise_end[agent][b] {
            step_value(b - 1, self.n, self.k)
        } else {
            step_value(b, self.n, self.k)
        }
    }

    pub fn welfare(&self, m: &Matching) -> f64 {
        (0..self.n).map(|i| self.value(i, m.item_of(i))).sum()
    }

    /// The constructed profile as a dense matrix; `n^2` memory.
    pub fn profile(&self) -> Result<ValuationProfile> {
        let rows = (0..self.n).map(|i| (0..self.n).map(|j| self.value(i, j)).collect()).collect();
        ValuationProfile::unrestricted(rows)
    }
}

struct StepPolicy<'a> {
    block_of: &'a [usize],
    n: usize,
    k: usize,
}

impl AnswerPolicy for StepPolicy<'_> {
    fn n(&self) -> usize {
        self.n
    }

    fn answer(&mut self, _agent: usize, item: usize) -> Result<f64> {
        Ok(step_value(self.block_of[item], self.n, self.k))
    }
}

/// `n^{-(l-1)/k}` on `A_l` for `l <= k`, zero on `A_{k+1}`.
fn step_value(block: usize, n: usize, k: usize) -> f64 {
    if block > k {
        0.0
    } else {
        (n as f64).powf(-((block - 1) as f64) / k as f64)
    }
}

/// Runs `(k-1)`-TSF on a common-ranking `k`-well-structured instance and
/// builds a consistent profile with a heavy matching the algorithm missed.
/// Needs `eps * n^{(l-1)/k}` integral for `2 <= l <= k`.
pub fn thm4_certify(n: usize, k: usize, epsilon: f64) -> Result<Thm4Certificate> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    for l in 2..=k {
        let s = epsilon * (n as f64).powf((l - 1) as f64 / k as f64);
        if (s - s.round()).abs() > 1e-9 {
            return Err(Error::InvalidParameters(format!(
                "|A_{l}| = {s} is not integral for n = {n}, k = {k}"
            )));
        }
    }
    let partition = KwsPartition::geometric(n, k, epsilon)?;
    let block_of = partition.block_of();
    let ordinal = OrdinalProfile::common(n);
    let policy_blocks = block_of.clone();
    let mut oracle = CountingOracle::new(StepPolicy { block_of: &policy_blocks, n, k });

    let parts = (0..n)
        .map(|i| threshold_partition(i, &ordinal, &mut oracle, k - 1))
        .collect::<Result<Vec<ThresholdPartition>>>()?;
    // Same ranking and same answers give every agent the same step function,
    // so every perfect matching maximizes simulated welfare.
    if parts.iter().any(|p| p != &parts[0]) {
        return Err(Error::Construction("agents received different step functions".into()));
    }
    let output = Matching::identity(n);

    let mut raise_end: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..k + 2)
                .map(|l| {
                    let got = output.item_of(i);
                    if l >= 1 && block_of[got] == l { got } else { usize::MAX }
                })
                .collect()
        })
        .collect();
    for e in oracle.transcript() {
        let b = block_of[e.item];
        raise_end[e.agent][b] = raise_end[e.agent][b].min(e.item);
    }

    let xi = partition.block(k + 1).len() as f64 / n as f64;
    let mut cert = Thm4Certificate {
        n,
        k,
        epsilon,
        xi,
        partition,
        witness: output.clone(),
        output,
        alg_welfare: 0.0,
        witness_welfare: 0.0,
        ratio: 1.0,
        block_of,
        raise_end,
    };

    for e in oracle.transcript() {
        if cert.value(e.agent, e.item) != e.answer {
            return Err(Error::Construction(format!(
                "binary search revealed item {} that the construction raised",
                e.item
            )));
        }
    }

    cert.witness = if n <= EXACT_WITNESS_MAX_N {
        let profile = cert.profile()?;
        if let Some(&(i, j)) = monotonicity_breaks(&profile).first() {
            return Err(Error::Construction(format!("agent {i} values increase at item {j}")));
        }
        hungarian_max_weight(&WeightMatrix::new(profile.rows().to_vec())?)?
    } else {
        // each agent moves one item up the common ranking
        Matching::new((0..n).map(|i| (cert.output.item_of(i) + n - 1) % n).collect())?
    };
    cert.alg_welfare = cert.welfare(&cert.output);
    cert.witness_welfare = cert.welfare(&cert.witness);
    cert.ratio = distortion_ratio(cert.witness_welfare, cert.alg_welfare)?;
    Ok(cert)
}

use crate::solvers::{hungarian_max_weight, WeightMatrix};
use crate::{Error, Matching, OrdinalProfile, QueryOracle, Result, SimulatedProfile};

/// Item blocks `A_1, ..., A_{k+1}` of a k-well-structured instance.
#[derive(Debug, Clone, PartialEq)]
pub struct KwsPartition {
    blocks: Vec<Vec<usize>>,
    epsilon: f64,
}

impl KwsPartition {
    /// Geometric blocks over items in index order: `|A_1| = 1`,
    /// `|A_l| = round(eps * n^{(l-1)/k})` for `2 <= l <= k`, remainder in
    /// `A_{k+1}`.
    pub fn geometric(n: usize, k: usize, epsilon: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameters(format!("epsilon {epsilon} not in (0,1)")));
        }
        let mut sizes = vec![1usize];
        for l in 2..=k {
            let s = (epsilon * (n as f64).powf((l - 1) as f64 / k as f64)).round().max(1.0);
            sizes.push(s as usize);
        }
        let used: usize = sizes.iter().sum();
        if used > n {
            return Err(Error::InvalidParameters(format!(
                "blocks need {used} items but n = {n}"
            )));
        }
        sizes.push(n - used);
        let mut next = 0;
        let blocks = sizes
            .into_iter()
            .map(|s| {
                let b: Vec<usize> = (next..next + s).collect();
                next += s;
                b
            })
            .collect();
        Ok(Self { blocks, epsilon })
    }

    pub fn from_blocks(blocks: Vec<Vec<usize>>, epsilon: f64) -> Result<Self> {
        if blocks.len() < 2 || blocks[0].len() != 1 {
            return Err(Error::InvalidParameters("need k+1 >= 2 blocks with |A_1| = 1".into()));
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &j in blocks.iter().flatten() {
            if j >= n || seen[j] {
                return Err(Error::InvalidParameters("blocks do not partition 0..n".into()));
            }
            seen[j] = true;
        }
        Ok(Self { blocks, epsilon })
    }

    pub fn k(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Block `ell`, 1-based.
    pub fn block(&self, ell: usize) -> &[usize] {
        &self.blocks[ell - 1]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// 1-based block index of every item.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n()];
        for (b, items) in self.blocks.iter().enumerate() {
            for &j in items {
                of[j] = b + 1;
            }
        }
        of
    }

    /// Checks that every agent ranks the blocks in order.
    pub fn check_profile(&self, ord: &OrdinalProfile) -> Result<()> {
        if ord.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: ord.n() });
        }
        let of = self.block_of();
        for agent in 0..ord.n() {
            let r = ord.ranking(agent);
            if let Some(w) = r.windows(2).find(|w| of[w[0]] > of[w[1]]) {
                return Err(Error::NotWellStructured(format!(
                    "agent {agent} ranks item {} (block {}) above item {} (block {})",
                    w[0], of[w[0]], w[1], of[w[1]]
                )));
            }
        }
        Ok(())
    }
}

/// k-FMM: per agent, query the least-preferred item of each of the first `k`
/// blocks and spread that value over the block; maximize welfare on the
/// result.
pub fn k_fmm_run<O: QueryOracle + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    part: &KwsPartition,
) -> Result<(Matching, SimulatedProfile)> {
    part.check_profile(ord)?;
    let n = ord.n();
    let mut simulated = SimulatedProfile::zeros(n);
    for agent in 0..n {
        let ranking = ord.ranking(agent);
        let mut end = 0;
        for ell in 1..=part.k() {
            end += part.block(ell).len();
            let u = oracle.query(agent, ranking[end - 1])?;
            for &j in part.block(ell) {
                simulated.set(agent, j, u);
            }
        }
    }
    let matching = hungarian_max_weight(&WeightMatrix::new(simulated.rows().to_vec())?)?;
    Ok((matching, simulated))
}

pub fn k_fmm<O: QueryOracle + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    part: &KwsPartition,
) -> Result<Matching> {
    k_fmm_run(ord, oracle, part).map(|(m, _)| m)
}

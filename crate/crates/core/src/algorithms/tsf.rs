use super::threshold::{threshold_partition, ThresholdPartition};
use crate::solvers::{hungarian_max_weight, WeightMatrix};
use crate::{Matching, OrdinalProfile, QueryOracle, Result, SimulatedProfile};

#[derive(Debug, Clone)]
pub struct TsfOutput {
    pub matching: Matching,
    pub simulated: SimulatedProfile,
    pub partitions: Vec<ThresholdPartition>,
}

/// lambda-TSF: threshold-partition every agent, round values down to the
/// step function, and return a welfare-maximizing matching on the rounded
/// values.
pub fn lambda_tsf_run<O: QueryOracle + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    lambda: usize,
) -> Result<TsfOutput> {
    let n = ord.n();
    let mut simulated = SimulatedProfile::zeros(n);
    let mut partitions = Vec::with_capacity(n);
    for agent in 0..n {
        let part = threshold_partition(agent, ord, oracle, lambda)?;
        let ranking = ord.ranking(agent);
        for (pos, &item) in ranking.iter().enumerate().take(part.boundaries[lambda] + 1) {
            simulated.set(agent, item, part.simulated_value(pos));
        }
        partitions.push(part);
    }
    let matching = hungarian_max_weight(&WeightMatrix::new(simulated.rows().to_vec())?)?;
    Ok(TsfOutput { matching, simulated, partitions })
}

pub fn lambda_tsf<O: QueryOracle + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    lambda: usize,
) -> Result<Matching> {
    lambda_tsf_run(ord, oracle, lambda).map(|out| out.matching)
}

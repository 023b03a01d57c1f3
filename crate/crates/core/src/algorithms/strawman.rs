use rand::seq::index::sample;
use rand::Rng;

use crate::solvers::{hungarian_max_weight, WeightMatrix};
use crate::{Matching, OrdinalProfile, QueryOracle, Result, SimulatedProfile};

/// Queries `k` distinct uniformly random items per agent and maximizes
/// welfare over the revealed values (0 elsewhere). A baseline for the
/// adversary sweeps, not an algorithm with a guarantee.
pub fn random_queries<O: QueryOracle + ?Sized, R: Rng + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    k: usize,
    rng: &mut R,
) -> Result<Matching> {
    let n = ord.n();
    let mut revealed = SimulatedProfile::zeros(n);
    for agent in 0..n {
        for item in sample(rng, n, k.min(n)) {
            revealed.set(agent, item, oracle.query(agent, item)?);
        }
    }
    hungarian_max_weight(&WeightMatrix::new(revealed.rows().to_vec())?)
}

use crate::solvers::{hungarian_max_weight, max_cardinality_bipartite, BipartiteGraph, WeightMatrix};
use crate::{Matching, OrdinalProfile, QueryOracle, Result, SimulatedProfile};

/// Smallest `c` with `c^3 >= n`.
pub fn ceil_cbrt(n: usize) -> usize {
    let mut c = (n as f64).cbrt().round() as usize;
    while c.pow(3) < n {
        c += 1;
    }
    while c > 0 && (c - 1).pow(3) >= n {
        c -= 1;
    }
    c
}

/// Minimum partial-matching size in the high-top branch:
/// `max(1, ceil(c / sqrt(log2 n)))`.
pub fn fpa_size_threshold(n: usize) -> usize {
    let c = ceil_cbrt(n) as f64;
    let log = (n as f64).log2();
    if log <= 0.0 {
        return 1;
    }
    ((c / log.sqrt()).ceil() as usize).max(1)
}

/// Number of leading positions that receive the `1/(3c)` boost in the
/// low-top branch: `max(1, ceil(c/4))`.
pub fn fpa_boost_positions(n: usize) -> usize {
    ceil_cbrt(n).div_ceil(4).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpaBranch {
    /// Some agent's top value is at least `1/c`.
    HighTop,
    LowTop,
}

#[derive(Debug, Clone)]
pub struct FpaOutput {
    pub matching: Matching,
    pub branch: FpaBranch,
    /// `(agent, item)` pairs of each extracted partial matching (high-top
    /// branch only).
    pub partial_matchings: Vec<Vec<(usize, usize)>>,
    /// Values the final welfare maximization ran on.
    pub simulated: SimulatedProfile,
}

pub fn fpa_run<O: QueryOracle + ?Sized>(ord: &OrdinalProfile, oracle: &mut O) -> Result<FpaOutput> {
    let n = ord.n();
    let mut simulated = SimulatedProfile::zeros(n);
    let mut top = vec![0.0; n];
    for agent in 0..n {
        let j = ord.ranking(agent)[0];
        top[agent] = oracle.query(agent, j)?;
        simulated.set(agent, j, top[agent]);
    }
    let c = ceil_cbrt(n);
    let max_top = top.iter().copied().fold(0.0, f64::max);

    let mut partial_matchings = Vec::new();
    let branch = if n <= 1 || max_top >= 1.0 / c as f64 {
        high_top(ord, oracle, &mut simulated, &mut partial_matchings)?;
        FpaBranch::HighTop
    } else {
        low_top(ord, oracle, &mut simulated, c)?;
        FpaBranch::LowTop
    };
    let matching = hungarian_max_weight(&WeightMatrix::new(simulated.rows().to_vec())?)?;
    Ok(FpaOutput { matching, branch, partial_matchings, simulated })
}

fn high_top<O: QueryOracle + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    revealed: &mut SimulatedProfile,
    partials: &mut Vec<Vec<(usize, usize)>>,
) -> Result<()> {
    let n = ord.n();
    let s = fpa_size_threshold(n);
    let mut active = vec![true; n];
    let mut remaining = n;
    for ell in 1..=n {
        while remaining >= s {
            let agents: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
            let mut g = BipartiteGraph::new(agents.len(), n);
            for (l, &i) in agents.iter().enumerate() {
                for &j in &ord.ranking(i)[..ell] {
                    g.add_edge(l, j);
                }
            }
            let m = max_cardinality_bipartite(&g);
            if m.len() < s {
                break;
            }
            let mut pairs = Vec::with_capacity(m.len());
            for (l, j) in m {
                let i = agents[l];
                let v = oracle.query(i, j)?;
                revealed.set(i, j, v);
                active[i] = false;
                pairs.push((i, j));
            }
            remaining -= pairs.len();
            partials.push(pairs);
        }
    }
    Ok(())
}

fn low_top<O: QueryOracle + ?Sized>(
    ord: &OrdinalProfile,
    oracle: &mut O,
    simulated: &mut SimulatedProfile,
    c: usize,
) -> Result<()> {
    let n = ord.n();
    let pos = c.min(n - 1);
    let q = fpa_boost_positions(n);
    let boost = 1.0 / (3.0 * c as f64);
    let small = 0.5 / n as f64;
    for agent in 0..n {
        let ranking = ord.ranking(agent);
        let u = oracle.query(agent, ranking[pos])?;
        for &j in &ranking[1..=pos] {
            simulated.set(agent, j, u);
        }
        if u < small {
            for &j in &ranking[1..q.min(n)] {
                simulated.set(agent, j, boost);
            }
        }
    }
    Ok(())
}

/// FirstPositionAdaptive: at most two value queries per agent.
pub fn fpa<O: QueryOracle + ?Sized>(ord: &OrdinalProfile, oracle: &mut O) -> Result<Matching> {
    fpa_run(ord, oracle).map(|out| out.matching)
}

//! Algorithm dispatch and per-algorithm guarantees.

use anyhow::{anyhow, bail, Context, Result};
use rand_chacha::ChaCha8Rng;

use qmatch_core::algorithms::{
    fpa, fpa_distortion_bound, k_fmm, kfmm_distortion_bound, lambda_tsf, ordinal_baseline,
    random_queries, tsf_distortion_bound, tsf_query_budget, KwsPartition, FPA_QUERY_BUDGET,
};
use qmatch_core::graphmax::{graph_distortion_bound, lambda_a_tsf, ApproxSolverPlug};
use qmatch_core::{derive_ordinal, social_welfare, CountingOracle, QueryOracle, ValuationClass};

use crate::config::ExperimentConfig;
use crate::family::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmId {
    Tsf,
    Kfmm,
    Fpa,
    Ordinal,
    Random,
    GraphTsf,
}

pub const ALL_ALGORITHMS: [AlgorithmId; 6] = [
    AlgorithmId::Tsf,
    AlgorithmId::Kfmm,
    AlgorithmId::Fpa,
    AlgorithmId::Ordinal,
    AlgorithmId::Random,
    AlgorithmId::GraphTsf,
];

impl AlgorithmId {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Tsf => "tsf",
            AlgorithmId::Kfmm => "kfmm",
            AlgorithmId::Fpa => "fpa",
            AlgorithmId::Ordinal => "ordinal",
            AlgorithmId::Random => "random",
            AlgorithmId::GraphTsf => "graph-tsf",
        }
    }

    /// Parameter string for CSV rows.
    pub fn params(self, cfg: &ExperimentConfig) -> String {
        match self {
            AlgorithmId::Tsf => format!("lambda={}", cfg.lambda),
            AlgorithmId::Kfmm | AlgorithmId::Random => format!("k={}", cfg.k),
            AlgorithmId::Fpa | AlgorithmId::Ordinal => String::new(),
            AlgorithmId::GraphTsf => format!("lambda={};plug={}", cfg.lambda, cfg.plug),
        }
    }

    pub fn validate(self, cfg: &ExperimentConfig) -> Result<()> {
        match self {
            AlgorithmId::GraphTsf if !cfg.family.is_graph() => {
                bail!("graph-tsf needs a graph family")
            }
            AlgorithmId::GraphTsf => plug(&cfg.plug).map(|_| ()),
            _ if cfg.family.is_graph() => bail!("{} needs a matching family", self.as_str()),
            AlgorithmId::Kfmm if cfg.k == 0 => bail!("kfmm needs k >= 1"),
            _ => Ok(()),
        }
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_ALGORITHMS
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| anyhow!("unknown algorithm `{s}`"))
    }
}

pub fn plug(name: &str) -> Result<ApproxSolverPlug> {
    match name {
        "hungarian" => Ok(ApproxSolverPlug::hungarian()),
        "greedy" => Ok(ApproxSolverPlug::greedy()),
        "brute-force" => Ok(ApproxSolverPlug::brute_force()),
        other => bail!("unknown plug `{other}`"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub alg_welfare: f64,
    pub max_queries: usize,
    /// `f64::INFINITY` for algorithms without a distortion guarantee.
    pub theorem_bound: f64,
    /// Per-agent query budget the algorithm promises.
    pub query_budget: Option<usize>,
}

/// Runs the configured algorithm on `inst` with a fresh truthful counting
/// oracle.
pub fn run_algorithm(cfg: &ExperimentConfig, inst: &Instance, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let algo = cfg.algorithm;
    match inst {
        Instance::Matching { profile, partition } => {
            let n = profile.n();
            let ord = derive_ordinal(profile);
            let mut oracle = CountingOracle::truthful(profile);
            let (matching, bound, budget) = match algo {
                AlgorithmId::Tsf => (
                    lambda_tsf(&ord, &mut oracle, cfg.lambda)?,
                    tsf_distortion_bound(n, cfg.lambda),
                    Some(tsf_query_budget(n, cfg.lambda)),
                ),
                AlgorithmId::Kfmm => {
                    let part = match partition {
                        Some(p) if p.k() == cfg.k => p.clone(),
                        _ => KwsPartition::geometric(n, cfg.k, cfg.eps.unwrap_or(0.5))?,
                    };
                    let m = k_fmm(&ord, &mut oracle, &part).context("k-FMM")?;
                    (m, kfmm_distortion_bound(n, cfg.k), Some(cfg.k))
                }
                AlgorithmId::Fpa => {
                    let bound = if profile.class() == ValuationClass::UnitSum {
                        fpa_distortion_bound(n)
                    } else {
                        f64::INFINITY
                    };
                    (fpa(&ord, &mut oracle)?, bound, Some(FPA_QUERY_BUDGET))
                }
                AlgorithmId::Ordinal => (ordinal_baseline(&ord)?, f64::INFINITY, Some(0)),
                AlgorithmId::Random => {
                    (random_queries(&ord, &mut oracle, cfg.k, rng)?, f64::INFINITY, Some(cfg.k))
                }
                AlgorithmId::GraphTsf => bail!("graph-tsf needs a graph instance"),
            };
            Ok(Outcome {
                alg_welfare: social_welfare(&matching, profile)?,
                max_queries: oracle.max_queries(),
                theorem_bound: bound,
                query_budget: budget,
            })
        }
        Instance::Graph { problem, truth } => {
            if algo != AlgorithmId::GraphTsf {
                bail!("{} needs a matching instance", algo.as_str());
            }
            let plug = plug(&cfg.plug)?;
            let mut oracle = CountingOracle::truthful(truth);
            let edges = lambda_a_tsf(problem, &mut oracle, cfg.lambda, &plug)?;
            let w = problem.true_weights(truth)?;
            Ok(Outcome {
                alg_welfare: edges.iter().map(|&e| w[e]).sum(),
                max_queries: oracle.max_queries(),
                theorem_bound: graph_distortion_bound(problem.r(), cfg.lambda, plug.rho),
                query_budget: Some(problem.query_budget(cfg.lambda)),
            })
        }
    }
}

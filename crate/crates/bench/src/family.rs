//! Instance families.

use anyhow::{bail, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use qmatch_core::adversary::{finalize_profile, thm1_certify, thm4_certify, LowerBoundFamily};
use qmatch_core::algorithms::{ordinal_baseline, random_queries, KwsPartition};
use qmatch_core::graphmax::{random_graph_instance, GraphKind, OrdinalGraphProblem};
use qmatch_core::{CountingOracle, QueryOracle, ValuationClass, ValuationProfile};

use crate::config::ExperimentConfig;

/// Largest vertex count for graph families; OPT is found by enumeration.
pub const GRAPH_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Rows of i.i.d. Exp(1) draws normalized to sum 1.
    UniformUnitSum,
    /// Exp(1) draws raised to `skew`, normalized.
    Skewed,
    /// Unit-sum rows sorted so every agent ranks items `0..n` alike.
    Ordered,
    /// k-well-structured blocks with random values inside each block.
    Kws,
    /// Lower-bound family finalized against the random-query strawman.
    Adversarial,
    /// The shared-pairs instance for ordinal algorithms.
    Thm1,
    /// Common-ranking well-structured instance finalized against (k-1)-TSF.
    Thm4,
    GraphOneSided,
    GraphGeneral,
    GraphTwoSided,
}

pub const ALL_FAMILIES: [Family; 10] = [
    Family::UniformUnitSum,
    Family::Skewed,
    Family::Ordered,
    Family::Kws,
    Family::Adversarial,
    Family::Thm1,
    Family::Thm4,
    Family::GraphOneSided,
    Family::GraphGeneral,
    Family::GraphTwoSided,
];

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::UniformUnitSum => "uniform-unitsum",
            Family::Skewed => "skewed",
            Family::Ordered => "ordered",
            Family::Kws => "kws",
            Family::Adversarial => "adversarial",
            Family::Thm1 => "thm1",
            Family::Thm4 => "thm4",
            Family::GraphOneSided => "graph-one-sided",
            Family::GraphGeneral => "graph-general",
            Family::GraphTwoSided => "graph-two-sided",
        }
    }

    pub fn is_graph(self) -> bool {
        self.graph_kind().is_some()
    }

    fn graph_kind(self) -> Option<GraphKind> {
        match self {
            Family::GraphOneSided => Some(GraphKind::OneSided),
            Family::GraphGeneral => Some(GraphKind::General),
            Family::GraphTwoSided => Some(GraphKind::TwoSidedPerfect),
            _ => None,
        }
    }

    /// Whether generated profiles are unit-sum under `cfg`.
    pub fn class(self, cfg: &ExperimentConfig) -> ValuationClass {
        match self {
            Family::UniformUnitSum | Family::Skewed | Family::Thm1 => ValuationClass::UnitSum,
            Family::Ordered => cfg.class.unwrap_or(ValuationClass::UnitSum),
            _ => cfg.class.unwrap_or(ValuationClass::Unrestricted),
        }
    }

    pub fn default_eps(self) -> f64 {
        match self {
            Family::Adversarial => LowerBoundFamily::DEFAULT_EPSILON,
            _ => 0.5,
        }
    }

    pub fn validate(self, cfg: &ExperimentConfig) -> Result<()> {
        let n = cfg.n;
        match self {
            Family::Kws | Family::Thm4 | Family::Adversarial if cfg.k == 0 => {
                bail!("{} needs k >= 1", self.as_str())
            }
            Family::Thm1 if n < 4 || n % 2 == 1 => bail!("thm1 needs even n >= 4"),
            f if f.is_graph() => {
                if n > GRAPH_MAX_VERTICES {
                    bail!("graph families support at most {GRAPH_MAX_VERTICES} vertices");
                }
                if f != Family::GraphGeneral && n % 2 == 1 {
                    bail!("{} needs an even vertex count", f.as_str());
                }
                if !(0.0..=1.0).contains(&cfg.edge_prob) {
                    bail!("edge_prob must lie in [0, 1]");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| anyhow::anyhow!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone)]
pub enum Instance {
    Matching { profile: ValuationProfile, partition: Option<KwsPartition> },
    Graph { problem: OrdinalGraphProblem, truth: ValuationProfile },
}

impl Instance {
    pub fn profile(&self) -> Option<&ValuationProfile> {
        match self {
            Instance::Matching { profile, .. } => Some(profile),
            Instance::Graph { .. } => None,
        }
    }
}

/// Draws one instance. Every random choice comes from `rng`.
pub fn generate_instance(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let family = cfg.family;
    family.validate(cfg)?;
    let n = cfg.n;
    let class = family.class(cfg);
    let eps = cfg.eps.unwrap_or(family.default_eps());
    let plain = |profile| Ok(Instance::Matching { profile, partition: None });

    match family {
        Family::UniformUnitSum => plain(unit_sum_rows(n, 1.0, rng)?),
        Family::Skewed => plain(unit_sum_rows(n, cfg.skew, rng)?),
        Family::Ordered => {
            let base = unit_sum_rows(n, 1.0, rng)?;
            let rows = base
                .rows()
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.sort_by(|a, b| b.total_cmp(a));
                    r
                })
                .collect();
            plain(finish(rows, class)?)
        }
        Family::Kws => {
            let partition = KwsPartition::geometric(n, cfg.k, eps)?;
            let mut rows = vec![vec![0.0; n]; n];
            for row in rows.iter_mut() {
                for l in 1..=cfg.k + 1 {
                    // disjoint value ranges keep the blocks in order
                    let scale = 0.1f64.powi(l as i32 - 1);
                    for &j in partition.block(l) {
                        row[j] = scale * rng.random_range(0.11..1.0);
                    }
                }
            }
            Ok(Instance::Matching { profile: finish(rows, class)?, partition: Some(partition) })
        }
        Family::Adversarial => {
            let xi = cfg.xi.unwrap_or(LowerBoundFamily::DEFAULT_XI);
            let fam = LowerBoundFamily::new(n, cfg.k, class, eps, xi)?;
            let mut oracle = CountingOracle::new(fam.policy());
            let output = random_queries(&fam.ordinal(), &mut oracle, cfg.k, rng)?;
            let fin = finalize_profile(&fam, oracle.transcript(), &output)?;
            plain(fin.profile)
        }
        Family::Thm1 => {
            let cert = thm1_certify(n, |ord, _| ordinal_baseline(ord))?;
            plain(cert.profile)
        }
        Family::Thm4 => {
            let cert = thm4_certify(n, cfg.k, eps)?;
            let profile = cert.profile()?;
            Ok(Instance::Matching { profile, partition: Some(cert.partition) })
        }
        Family::GraphOneSided | Family::GraphGeneral | Family::GraphTwoSided => {
            let kind = family.graph_kind().expect("graph family");
            let (problem, truth) = random_graph_instance(rng, kind, n, cfg.edge_prob)?;
            Ok(Instance::Graph { problem, truth })
        }
    }
}

fn unit_sum_rows(n: usize, exponent: f64, rng: &mut ChaCha8Rng) -> Result<ValuationProfile> {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let x: f64 = Exp1.sample(rng);
                    x.powf(exponent)
                })
                .collect()
        })
        .collect();
    finish(rows, ValuationClass::UnitSum)
}

fn finish(mut rows: Vec<Vec<f64>>, class: ValuationClass) -> Result<ValuationProfile> {
    if class == ValuationClass::UnitSum {
        for row in rows.iter_mut() {
            let s: f64 = row.iter().sum();
            if s <= 0.0 {
                bail!("cannot normalize an all-zero row");
            }
            row.iter_mut().for_each(|x| *x /= s);
        }
    }
    Ok(ValuationProfile::new(rows, class)?)
}

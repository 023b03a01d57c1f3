//! Repetition runner and CSV output.
//!
//! Repetition `r` of seed `s` draws from ChaCha8 seeded with `s`, stream `r`.
//! The generator is portable, so the same pair reproduces the same instance
//! on any platform.

use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use qmatch_core::graphmax::graph_opt;
use qmatch_core::solvers::{brute_force_opt, hungarian_max_weight, WeightMatrix};
use qmatch_core::{distortion_ratio, TOL};

use crate::algorithm::run_algorithm;
use crate::config::ExperimentConfig;
use crate::family::{generate_instance, Instance};

/// Largest n for which Hungarian OPT is cross-checked by brute force.
pub const CROSS_CHECK_MAX_N: usize = 7;

pub fn rep_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub family: String,
    pub n: usize,
    pub algorithm: String,
    pub params: String,
    pub seed: u64,
    pub opt_welfare: f64,
    pub alg_welfare: f64,
    pub distortion: f64,
    pub max_queries: usize,
    pub theorem_bound: f64,
    pub bound_satisfied: bool,
    pub runtime_ms: f64,
    #[serde(skip)]
    pub rep: usize,
    #[serde(skip)]
    pub query_budget: Option<usize>,
}

impl RunRecord {
    pub fn within_budget(&self) -> bool {
        self.query_budget.is_none_or(|b| self.max_queries <= b)
    }
}

pub fn optimum(inst: &Instance) -> Result<f64> {
    match inst {
        Instance::Matching { profile, .. } => {
            let w = WeightMatrix::new(profile.rows().to_vec())?;
            let opt = hungarian_max_weight(&w)?.welfare_on(profile.rows());
            if profile.n() <= CROSS_CHECK_MAX_N {
                let brute = brute_force_opt(&w)?.welfare_on(profile.rows());
                if (brute - opt).abs() > TOL {
                    bail!("Hungarian optimum {opt} differs from brute force {brute}");
                }
            }
            Ok(opt)
        }
        Instance::Graph { problem, truth } => Ok(graph_opt(problem, &problem.true_weights(truth)?)?.1),
    }
}

pub fn run_repetition(cfg: &ExperimentConfig, rep: usize) -> Result<RunRecord> {
    let start = Instant::now();
    let mut rng = rep_rng(cfg.seed, rep as u64);
    let inst = generate_instance(cfg, &mut rng)?;
    let opt = optimum(&inst)?;
    let out = run_algorithm(cfg, &inst, &mut rng)?;
    let distortion = distortion_ratio(opt, out.alg_welfare)?;
    let mut params = cfg.algorithm.params(cfg);
    if !params.is_empty() {
        params.push(';');
    }
    params.push_str(&format!("rep={rep}"));
    Ok(RunRecord {
        family: cfg.family.as_str().to_string(),
        n: cfg.n,
        algorithm: cfg.algorithm.as_str().to_string(),
        params,
        seed: cfg.seed,
        opt_welfare: opt,
        alg_welfare: out.alg_welfare,
        distortion,
        max_queries: out.max_queries,
        theorem_bound: out.theorem_bound,
        bound_satisfied: distortion <= out.theorem_bound + TOL,
        runtime_ms: if cfg.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 },
        rep,
        query_budget: out.query_budget,
    })
}

/// All repetitions, in repetition order. Repetitions run in parallel.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    (0..cfg.reps).into_par_iter().map(|rep| run_repetition(cfg, rep)).collect()
}

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[RunRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

pub const CSV_HEADER: &str = "family,n,algorithm,params,seed,opt_welfare,alg_welfare,distortion,max_queries,theorem_bound,bound_satisfied,runtime_ms";

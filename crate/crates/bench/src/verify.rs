//! Quick invariant suite behind `qmatch verify`.

use anyhow::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use qmatch_core::algorithms::{ceil_cbrt, fpa_boost_positions};
use qmatch_core::solvers::{brute_force_opt, hungarian_max_weight, WeightMatrix};
use qmatch_core::ValuationClass;

use crate::algorithm::AlgorithmId;
use crate::certify::{certify_lower_bound, certify_thm1, certify_thm4, Challenger};
use crate::config::ExperimentConfig;
use crate::experiment::{rep_rng, run_experiment, to_csv_string};
use crate::family::Family;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Sorted (descending) unit-sum vector of length `n` on which FPA takes
/// its low-top branch and flags the agent: every value is below `1/c` and
/// the value at 0-based position `c` is below `1/(2n)`, with
/// `c = ceil(n^{1/3})`. Needs `n > c`.
pub fn fpa_low_top_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let c = ceil_cbrt(n);
    assert!(n > c, "n = {n} leaves no tail");
    let cap = 0.5 / n as f64;
    loop {
        // tail below 1/(2n), total tail mass t
        let tail_scale = rng.random_range(0.0..1.0f64).powf(0.25);
        let mut tail: Vec<f64> =
            (0..n - c).map(|_| cap * tail_scale * rng.random_range(0.0..1.0)).collect();
        tail.sort_by(|a, b| b.total_cmp(a));
        let t: f64 = tail.iter().sum();
        // head value 1/c - d_i with d summing to t, spread by a random
        // Dirichlet concentration
        let shape = 10f64.powf(rng.random_range(-1.5..1.5));
        let gamma = Gamma::new(shape, 1.0).expect("positive shape");
        let w: Vec<f64> = (0..c).map(|_| gamma.sample(rng) + f64::MIN_POSITIVE).collect();
        let ws: f64 = w.iter().sum();
        let top = 1.0 / c as f64;
        let mut head: Vec<f64> = w.iter().map(|x| top - t * x / ws).collect();
        head.sort_by(|a, b| b.total_cmp(a));
        let tail_max = tail.first().copied().unwrap_or(0.0);
        if head[0] < top && head[c - 1] >= tail_max {
            head.extend(tail);
            return head;
        }
    }
}

/// Value at the last boosted position is at least the boost `1/(3c)`.
pub fn fpa_boost_is_dominated(sorted: &[f64]) -> bool {
    let n = sorted.len();
    let c = ceil_cbrt(n);
    let q = fpa_boost_positions(n);
    sorted[q - 1] >= 1.0 / (3.0 * c as f64) - 1e-12
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String>) -> Check {
    match f() {
        Ok(detail) => Check { name, passed: true, detail },
        Err(e) => Check { name, passed: false, detail: format!("{e:#}") },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        anyhow::bail!(msg())
    }
}

pub fn run_verify(seed: u64) -> Vec<Check> {
    vec![
        check("solver-equivalence", || {
            let mut rng = rep_rng(seed, 0);
            for n in 2..=7 {
                for _ in 0..30 {
                    let rows: Vec<Vec<f64>> =
                        (0..n).map(|_| (0..n).map(|_| rng.random::<f64>()).collect()).collect();
                    let w = WeightMatrix::new(rows.clone())?;
                    let h = hungarian_max_weight(&w)?.welfare_on(&rows);
                    let b = brute_force_opt(&w)?.welfare_on(&rows);
                    ensure((h - b).abs() <= 1e-9, || format!("n = {n}: {h} vs {b}"))?;
                }
            }
            Ok("180 matrices".into())
        }),
        check("query-budgets-and-bounds", || {
            let mut runs = 0;
            let mut cases = Vec::new();
            for lambda in 0..=3 {
                cases.push((AlgorithmId::Tsf, Family::UniformUnitSum, lambda, 2));
            }
            for k in 1..=3 {
                cases.push((AlgorithmId::Kfmm, Family::Kws, 0, k));
            }
            cases.push((AlgorithmId::Fpa, Family::Skewed, 0, 2));
            for (algorithm, family, lambda, k) in cases {
                let cfg = ExperimentConfig {
                    algorithm,
                    family,
                    lambda,
                    k,
                    n: 64,
                    reps: 5,
                    seed,
                    ..ExperimentConfig::default()
                };
                for r in run_experiment(&cfg)? {
                    ensure(r.within_budget(), || format!("{} over budget: {r:?}", r.algorithm))?;
                    ensure(r.bound_satisfied, || format!("{} over bound: {r:?}", r.algorithm))?;
                    runs += 1;
                }
            }
            Ok(format!("{runs} runs"))
        }),
        check("fpa-boost-lemma", || {
            let mut rng = rep_rng(seed, 1);
            for _ in 0..1000 {
                let n = rng.random_range(9..=2048);
                let v = fpa_low_top_vector(&mut rng, n);
                ensure(fpa_boost_is_dominated(&v), || format!("violated at n = {n}"))?;
            }
            Ok("1000 vectors".into())
        }),
        check("determinism", || {
            let cfg = ExperimentConfig { n: 32, reps: 8, seed, ..ExperimentConfig::default() };
            let a = to_csv_string(&run_experiment(&cfg)?)?;
            let b = to_csv_string(&run_experiment(&cfg)?)?;
            ensure(a == b, || "CSV differs between runs".into())?;
            Ok(format!("{} bytes", a.len()))
        }),
        check("certificates", || {
            let recs = [
                certify_thm1(8)?,
                certify_thm4(64, 2, 0.5)?,
                certify_lower_bound(ValuationClass::Unrestricted, 64, 2, Challenger::Random, seed)?,
            ];
            for r in &recs {
                ensure(r.passed, || format!("{} failed: {r:?}", r.construction))?;
            }
            Ok(format!("{} certificates", recs.len()))
        }),
    ]
}

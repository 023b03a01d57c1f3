//! Experiment configuration.
//!
//! A config file is plain `key = value` lines; `#` starts a comment. The CLI
//! applies the file first and then its own flags, so flags win.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use qmatch_core::ValuationClass;

use crate::algorithm::AlgorithmId;
use crate::family::Family;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmId,
    /// lambda for threshold algorithms.
    pub lambda: usize,
    /// Queries per agent (k-FMM, random strawman) and block count for
    /// well-structured and adversarial families.
    pub k: usize,
    /// Solver plug for graph algorithms: `hungarian`, `greedy`, `brute-force`.
    pub plug: String,
    pub family: Family,
    pub n: usize,
    /// Family default when unset.
    pub eps: Option<f64>,
    pub xi: Option<f64>,
    pub class: Option<ValuationClass>,
    /// Exponent applied to exponential draws in the skewed family.
    pub skew: f64,
    /// Edge probability for random graph families.
    pub edge_prob: f64,
    pub reps: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Fill `runtime_ms`; off keeps CSV output byte-identical across runs.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithm: AlgorithmId::Tsf,
            lambda: 1,
            k: 2,
            plug: "greedy".into(),
            family: Family::UniformUnitSum,
            n: 64,
            eps: None,
            xi: None,
            class: None,
            skew: 3.0,
            edge_prob: 0.5,
            reps: 10,
            seed: 0,
            out: None,
            timing: false,
        }
    }
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let num = |what: &str| anyhow!("`{key}` expects {what}, got `{v}`");
        match key.trim() {
            "algorithm" => self.algorithm = v.parse()?,
            "lambda" => self.lambda = v.parse().map_err(|_| num("an integer"))?,
            "k" => self.k = v.parse().map_err(|_| num("an integer"))?,
            "plug" => self.plug = v.to_string(),
            "family" => self.family = v.parse()?,
            "n" => self.n = v.parse().map_err(|_| num("an integer"))?,
            "eps" => self.eps = Some(v.parse().map_err(|_| num("a number"))?),
            "xi" => self.xi = Some(v.parse().map_err(|_| num("a number"))?),
            "class" => self.class = Some(v.parse()?),
            "skew" => self.skew = v.parse().map_err(|_| num("a number"))?,
            "edge_prob" => self.edge_prob = v.parse().map_err(|_| num("a number"))?,
            "reps" => self.reps = v.parse().map_err(|_| num("an integer"))?,
            "seed" => self.seed = v.parse().map_err(|_| num("an integer"))?,
            "out" => self.out = Some(PathBuf::from(v)),
            "timing" => self.timing = v.parse().map_err(|_| num("true or false"))?,
            other => bail!("unknown config key `{other}`"),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| anyhow!("line {}: expected `key = value`", no + 1))?;
            self.set(key, value).with_context(|| format!("line {}", no + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            bail!("reps must be positive");
        }
        if self.n == 0 {
            bail!("n must be positive");
        }
        if self.skew <= 0.0 {
            bail!("skew must be positive");
        }
        if let Some(e) = self.eps {
            if !(e > 0.0 && e < 1.0) {
                bail!("eps must lie in (0, 1)");
            }
        }
        if let Some(x) = self.xi {
            if !(x > 0.0 && x <= 1.0) {
                bail!("xi must lie in (0, 1]");
            }
        }
        self.family.validate(self)?;
        self.algorithm.validate(self)
    }
}

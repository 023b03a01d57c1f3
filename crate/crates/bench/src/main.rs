use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use qmatch_bench::certify::certify_sweep;
use qmatch_bench::verify::run_verify;
use qmatch_bench::{generate_instance, rep_rng, run_experiment, write_csv, ExperimentConfig, Instance};
use qmatch_core::graphmax::write_graph_instance;
use qmatch_core::io::write_valuation;

#[derive(Parser)]
#[command(name = "qmatch", version, about = "Query-limited matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one generated instance.
    Gen {
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Repetition index whose random stream to use.
        #[arg(long, default_value_t = 0)]
        rep: u64,
    },
    /// Run an experiment and write one CSV row per repetition.
    Run {
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Build every adversarial certificate and write them as CSV.
    Certify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the quick invariant suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// `key = value` file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    /// `unrestricted` or `unit-sum`.
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    plug: Option<String>,
    #[arg(long)]
    skew: Option<f64>,
    #[arg(long)]
    edge_prob: Option<f64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time per repetition.
    #[arg(long)]
    timing: bool,
}

impl ExperimentArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let flags: [(&str, Option<String>); 15] = [
            ("algorithm", self.algorithm.clone()),
            ("family", self.family.clone()),
            ("n", self.n.map(|v| v.to_string())),
            ("k", self.k.map(|v| v.to_string())),
            ("lambda", self.lambda.map(|v| v.to_string())),
            ("eps", self.eps.map(|v| v.to_string())),
            ("xi", self.xi.map(|v| v.to_string())),
            ("class", self.class.clone()),
            ("plug", self.plug.clone()),
            ("skew", self.skew.map(|v| v.to_string())),
            ("edge_prob", self.edge_prob.map(|v| v.to_string())),
            ("reps", self.reps.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
            ("timing", self.timing.then(|| "true".to_string())),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        Ok(cfg)
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Gen { exp, rep } => {
            let cfg = exp.config()?;
            cfg.family.validate(&cfg)?;
            let inst = generate_instance(&cfg, &mut rep_rng(cfg.seed, rep))?;
            let text = match &inst {
                Instance::Matching { profile, .. } => write_valuation(profile),
                Instance::Graph { problem, truth } => write_graph_instance(problem, Some(truth)),
            };
            output(cfg.out.as_ref())?.write_all(text.as_bytes())?;
        }
        Command::Run { exp } => {
            let cfg = exp.config()?;
            let records = run_experiment(&cfg)?;
            write_csv(&records, output(cfg.out.as_ref())?)?;
            let over_bound = records.iter().filter(|r| !r.bound_satisfied).count();
            let over_budget = records.iter().filter(|r| !r.within_budget()).count();
            if over_bound + over_budget > 0 {
                eprintln!(
                    "warning: {over_bound} run(s) above the distortion bound, {over_budget} over the query budget"
                );
            }
        }
        Command::Certify { seed, out } => {
            let mut w = csv::Writer::from_writer(output(out.as_ref())?);
            let mut failed = 0;
            for rec in certify_sweep(seed) {
                match rec {
                    Ok(r) => {
                        if !r.passed {
                            failed += 1;
                        }
                        w.serialize(&r)?;
                    }
                    Err(e) => eprintln!("skipped: {e:#}"),
                }
            }
            w.flush()?;
            if failed > 0 {
                eprintln!("{failed} certificate(s) below their stated floor");
            }
        }
        Command::Verify { seed } => {
            let checks = run_verify(seed);
            let mut ok = true;
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                ok &= c.passed;
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

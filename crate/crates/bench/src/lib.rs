//! Experiment harness for query-limited matching: instance families,
//! repetition runner with CSV output, adversarial certificates, and a quick
//! invariant suite.

pub mod algorithm;
pub mod certify;
pub mod config;
pub mod experiment;
pub mod family;
pub mod verify;

pub use algorithm::{run_algorithm, AlgorithmId, Outcome};
pub use config::ExperimentConfig;
pub use experiment::{rep_rng, run_experiment, to_csv_string, write_csv, RunRecord, CSV_HEADER};
pub use family::{generate_instance, Family, Instance};

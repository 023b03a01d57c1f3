//! Query-limited matching algorithms and their guarantees.

mod fpa;
mod kfmm;
mod ordinal;
mod strawman;
mod threshold;
mod tsf;

pub use fpa::{
    ceil_cbrt, fpa, fpa_boost_positions, fpa_run, fpa_size_threshold, FpaBranch, FpaOutput,
};
pub use kfmm::{k_fmm, k_fmm_run, KwsPartition};
pub use ordinal::ordinal_baseline;
pub use strawman::random_queries;
pub use threshold::{alpha, threshold_partition, threshold_steps, ThresholdPartition};
pub use tsf::{lambda_tsf, lambda_tsf_run, TsfOutput};

/// `ceil(log2 n)`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Per-agent query budget of lambda-TSF: `1 + lambda + lambda * ceil(log2 n)`.
pub fn tsf_query_budget(n: usize, lambda: usize) -> usize {
    1 + lambda + lambda * ceil_log2(n)
}

/// `2 n^{1/(lambda+1)}`.
pub fn tsf_distortion_bound(n: usize, lambda: usize) -> f64 {
    2.0 * (n as f64).powf(1.0 / (lambda as f64 + 1.0))
}

/// `2k n^{1/k} + k + 1`, the k-FMM guarantee with the analysis constants
/// made explicit.
pub fn kfmm_distortion_bound(n: usize, k: usize) -> f64 {
    let k_f = k as f64;
    2.0 * k_f * (n as f64).powf(1.0 / k_f) + k_f + 1.0
}

/// `17 n^{2/3} sqrt(log2 n)`: covers both FPA branches.
pub fn fpa_distortion_bound(n: usize) -> f64 {
    let n_f = n as f64;
    17.0 * n_f.powf(2.0 / 3.0) * n_f.log2().max(0.0).sqrt()
}

pub const FPA_QUERY_BUDGET: usize = 2;

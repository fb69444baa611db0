//! Similarity scores, their distributions and significance tests, and
//! threshold inference.

mod mww;
mod similarity;
mod stats;
mod threshold;

pub use mww::{midranks, mww_exact, mww_normal, mww_test, MwwMethod, MwwResult, EXACT_MAX_SMALL, EXACT_MAX_TOTAL};
pub use similarity::{cosine, euclidean_distance, euclidean_similarity};
pub use stats::{dist_stats, mean, quantile_sorted, DistributionStats};
pub use threshold::{infer_threshold, ThresholdKind, ThresholdSpec, ANY_SOURCE};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StatError {
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty sample")]
    EmptySample,
    #[error("non-finite value in sample")]
    NonFinite,
}

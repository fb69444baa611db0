//! Tokenization and fragment embedding backends.

mod doc;
mod hashed;
mod store;
mod tokenize;

pub use doc::{DocEmbedder, DocEmbedderConfig, DEFAULT_DOC_DIM};
pub use hashed::{embed_hashed, hashed_counts, token_bucket, DEFAULT_HASHED_DIM};
pub use store::{load_vectors, save_vectors, EmbeddingVector, Side, VectorStore};
pub use tokenize::{tokenize, tokenize_with, TokenSequence, TokenizerConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("cannot train on an empty corpus")]
    EmptyCorpus,
    #[error("embedding dimension must be at least 2, got {0}")]
    BadDimension(usize),
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("vector file must start with a `dim=<n>` line, n > 0")]
    BadHeader,
    #[error("vector file line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("dimension mismatch{}: expected {expected}, found {found}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    DimensionMismatch {
        line: Option<usize>,
        expected: usize,
        found: usize,
    },
    #[error("duplicate key ({patch_id}, {side}){}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    DuplicateKey {
        line: Option<usize>,
        patch_id: String,
        side: Side,
    },
    #[error("invalid patch id {0:?}")]
    BadKey(String),
    #[error("non-finite value in vector for {0}")]
    NonFinite(String),
}

//! Patch records: manifests, unified diffs, fragment extraction,
//! deduplication and the location-based labeling heuristic.

mod dedup;
mod diff;
mod fragment;
mod label;
mod manifest;

pub use dedup::{dedup, dedup_key};
pub use diff::{parse_diff, DiffLine, Hunk, LineKind, LineRange};
pub use fragment::{extract_fragments, FragmentPair};
pub use label::{auto_label, AutoLabel, LocationSpec};
pub use manifest::{parse_manifest, read_manifest, write_manifest, Label, Patch};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiffError {
    #[error("malformed diff: no hunk header")]
    NoHunk,
    #[error("malformed diff: bad hunk header at line {line}")]
    BadHunkHeader { line: usize },
    #[error(
        "malformed diff: hunk at line {line} is short by {missing_old} old / {missing_new} new lines"
    )]
    CountMismatch {
        line: usize,
        missing_old: u64,
        missing_new: u64,
    },
    #[error("empty {side} fragment")]
    EmptyFragment { side: &'static str },
}

impl DiffError {
    pub fn is_malformed(&self) -> bool {
        !matches!(self, DiffError::EmptyFragment { .. })
    }
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("manifest line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("manifest line {line}: id must be non-empty and free of tabs/newlines")]
    BadId { line: usize },
    #[error("manifest line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error("manifest line {line}: cannot read diff file {path}: {source}")]
    DiffFile {
        line: usize,
        path: String,
        source: std::io::Error,
    },
}

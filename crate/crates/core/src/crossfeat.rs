//! Crossed features for one patch: for fragment embeddings of dimension
//! `n`, the layout is
//!
//! ```text
//! [ patched - buggy (n) | patched * buggy (n) | cosine | euclidean similarity ]
//! ```

use thiserror::Error;

use crate::lexemb::{EmbeddingVector, Side, VectorStore};
use crate::simstat::{cosine, euclidean_similarity, StatError};

#[derive(Debug, Error)]
pub enum CrossError {
    #[error("buggy and patched vectors differ in dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("zero vector for patch {0}")]
    ZeroVector(String),
    #[error("patch {0} has no {1} vector")]
    MissingSide(String, Side),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossedFeatures {
    pub patch_id: String,
    pub values: Vec<f64>,
    pub label: Option<bool>,
}

pub fn crossed_dim(n: usize) -> usize {
    2 * n + 2
}

pub fn cross_values(buggy: &[f64], patched: &[f64]) -> Result<Vec<f64>, CrossError> {
    let n = buggy.len();
    if patched.len() != n {
        return Err(CrossError::DimensionMismatch(n, patched.len()));
    }
    let cos = cosine(buggy, patched).map_err(|e| match e {
        StatError::ZeroVector => CrossError::ZeroVector(String::new()),
        _ => CrossError::DimensionMismatch(n, patched.len()),
    })?;
    let euc = euclidean_similarity(buggy, patched).expect("dimensions already checked");
    let mut out = Vec::with_capacity(crossed_dim(n));
    out.extend(patched.iter().zip(buggy).map(|(p, b)| p - b));
    out.extend(patched.iter().zip(buggy).map(|(p, b)| p * b));
    out.push(cos);
    out.push(euc);
    Ok(out)
}

pub fn cross(buggy: &EmbeddingVector, patched: &EmbeddingVector) -> Result<CrossedFeatures, CrossError> {
    let values = cross_values(&buggy.values, &patched.values).map_err(|e| match e {
        CrossError::ZeroVector(_) => CrossError::ZeroVector(buggy.patch_id.clone()),
        other => other,
    })?;
    Ok(CrossedFeatures {
        patch_id: buggy.patch_id.clone(),
        values,
        label: None,
    })
}

/// Crossed features for every patch in `store` that has both sides.
/// Patches with a zero vector on either side are returned separately.
pub fn cross_store(store: &VectorStore) -> (Vec<CrossedFeatures>, Vec<(String, CrossError)>) {
    let mut ok = Vec::new();
    let mut skipped = Vec::new();
    for id in store.patch_ids() {
        let (Some(b), Some(p)) = (store.get(id, Side::Buggy), store.get(id, Side::Patched)) else {
            let missing = if store.get(id, Side::Buggy).is_none() {
                Side::Buggy
            } else {
                Side::Patched
            };
            if store.get(id, Side::Crossed).is_none() {
                skipped.push((id.to_string(), CrossError::MissingSide(id.to_string(), missing)));
            }
            continue;
        };
        match cross_values(b, p) {
            Ok(values) => ok.push(CrossedFeatures {
                patch_id: id.to_string(),
                values,
                label: None,
            }),
            Err(CrossError::ZeroVector(_)) => {
                skipped.push((id.to_string(), CrossError::ZeroVector(id.to_string())))
            }
            Err(e) => skipped.push((id.to_string(), e)),
        }
    }
    (ok, skipped)
}

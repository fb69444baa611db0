//! Text vector files.
//!
//! ```text
//! dim=3
//! p1  Buggy    0.1 -0.25 1
//! p1  Patched  0.1 -0.2 1
//! ```
//!
//! Columns are separated by single tabs. Values are written in shortest
//! round-trip decimal form, so a save/load cycle reproduces every `f64`
//! exactly.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::StoreError;

/// Which fragment (or derived feature row) a vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Buggy,
    Patched,
    Crossed,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Buggy => "Buggy",
            Side::Patched => "Patched",
            Side::Crossed => "Crossed",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Buggy" => Ok(Side::Buggy),
            "Patched" => Ok(Side::Patched),
            "Crossed" => Ok(Side::Crossed),
            _ => Err(format!("unknown side {s:?}")),
        }
    }
}

/// A vector tagged with the patch and side it was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    pub patch_id: String,
    pub side: Side,
    pub values: Vec<f64>,
}

impl EmbeddingVector {
    pub fn new(patch_id: impl Into<String>, side: Side, values: Vec<f64>) -> Self {
        EmbeddingVector {
            patch_id: patch_id.into(),
            side,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// Fixed-dimension vectors keyed by `(patch_id, side)`, iterated in key
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorStore {
    dim: usize,
    vectors: BTreeMap<(String, Side), Vec<f64>>,
}

fn valid_key(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c == '\t' || c == '\n' || c == '\r')
}

impl VectorStore {
    pub fn new(dim: usize) -> Self {
        VectorStore {
            dim,
            vectors: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn insert(&mut self, patch_id: &str, side: Side, values: Vec<f64>) -> Result<(), StoreError> {
        if !valid_key(patch_id) {
            return Err(StoreError::BadKey(patch_id.to_string()));
        }
        if values.len() != self.dim {
            return Err(StoreError::DimensionMismatch {
                line: None,
                expected: self.dim,
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(StoreError::NonFinite(patch_id.to_string()));
        }
        let key = (patch_id.to_string(), side);
        if self.vectors.contains_key(&key) {
            return Err(StoreError::DuplicateKey {
                line: None,
                patch_id: patch_id.to_string(),
                side,
            });
        }
        self.vectors.insert(key, values);
        Ok(())
    }

    pub fn insert_vector(&mut self, v: EmbeddingVector) -> Result<(), StoreError> {
        self.insert(&v.patch_id, v.side, v.values)
    }

    pub fn get(&self, patch_id: &str, side: Side) -> Option<&[f64]> {
        self.vectors
            .get(&(patch_id.to_string(), side))
            .map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Side, &[f64])> {
        self.vectors
            .iter()
            .map(|((id, side), v)| (id.as_str(), *side, v.as_slice()))
    }

    /// Distinct patch ids, sorted.
    pub fn patch_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.vectors.keys().map(|(id, _)| id.as_str()).collect();
        ids.dedup();
        ids
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim={}\n", self.dim);
        for ((id, side), values) in &self.vectors {
            write!(out, "{id}\t{side}\t").unwrap();
            for (i, v) in values.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, StoreError> {
        let mut lines = text.split('\n').enumerate();
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        let dim = header
            .trim_end_matches('\r')
            .strip_prefix("dim=")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or(StoreError::BadHeader)?;
        let mut store = VectorStore::new(dim);
        for (idx, line) in lines {
            let lineno = idx + 1;
            let line = line.trim_end_matches('\r');
            if line.is_empty() {
                continue;
            }
            let syntax = |message: &str| StoreError::Syntax {
                line: lineno,
                message: message.to_string(),
            };
            let mut fields = line.splitn(3, '\t');
            let id = fields.next().unwrap_or("");
            let side: Side = fields
                .next()
                .ok_or_else(|| syntax("missing side"))?
                .parse()
                .map_err(|e: String| syntax(&e))?;
            let values = fields.next().ok_or_else(|| syntax("missing values"))?;
            let values: Vec<f64> = values
                .split(' ')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>().map_err(|_| syntax(&format!("bad number {s:?}"))))
                .collect::<Result<_, _>>()?;
            if values.len() != dim {
                return Err(StoreError::DimensionMismatch {
                    line: Some(lineno),
                    expected: dim,
                    found: values.len(),
                });
            }
            store.insert(id, side, values).map_err(|e| match e {
                StoreError::DuplicateKey { patch_id, side, .. } => StoreError::DuplicateKey {
                    line: Some(lineno),
                    patch_id,
                    side,
                },
                StoreError::BadKey(_) => syntax("empty patch id"),
                other => other,
            })?;
        }
        Ok(store)
    }
}

pub fn load_vectors(path: &Path) -> Result<VectorStore, StoreError> {
    let text = fs::read_to_string(path).map_err(|e| StoreError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    VectorStore::parse(&text)
}

pub fn save_vectors(store: &VectorStore, path: &Path) -> Result<(), StoreError> {
    fs::write(path, store.to_text()).map_err(|e| StoreError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

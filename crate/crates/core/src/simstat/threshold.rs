use std::fmt;
use std::str::FromStr;

use super::stats::dist_stats;
use super::StatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThresholdKind {
    Q1,
    Mean,
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdKind::Q1 => "q1",
            ThresholdKind::Mean => "mean",
        })
    }
}

impl FromStr for ThresholdKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "q1" => Ok(ThresholdKind::Q1),
            "mean" => Ok(ThresholdKind::Mean),
            _ => Err(format!("unknown threshold kind {s:?}")),
        }
    }
}

/// Tag that makes a threshold applicable to every corpus.
pub const ANY_SOURCE: &str = "*";

/// A similarity cut inferred from a reference score distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSpec {
    pub kind: ThresholdKind,
    pub value: f64,
    /// Corpus the threshold was inferred from. Only patches of that corpus
    /// may be screened with it, unless it is [`ANY_SOURCE`].
    pub source_tag: String,
}

impl ThresholdSpec {
    pub fn applies_to(&self, corpus: &str) -> bool {
        self.source_tag == ANY_SOURCE || self.source_tag == corpus
    }
}

pub fn infer_threshold(
    scores: &[f64],
    kind: ThresholdKind,
    source_tag: impl Into<String>,
) -> Result<ThresholdSpec, StatError> {
    let stats = dist_stats(scores)?;
    let value = match kind {
        ThresholdKind::Q1 => stats.q1,
        ThresholdKind::Mean => stats.mean,
    };
    Ok(ThresholdSpec {
        kind,
        value,
        source_tag: source_tag.into(),
    })
}

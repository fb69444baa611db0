//! Unsupervised screening: similarity thresholds and per-bug top-1 ranking.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::patchio::Label;
use crate::simstat::ThresholdSpec;

#[derive(Debug, Error)]
pub enum ScreenError {
    #[error("threshold {threshold} and scores are on different scales (score range {lo}..{hi})")]
    ScaleMismatch { threshold: f64, lo: f64, hi: f64 },
    #[error("threshold inferred from {source_tag:?} cannot screen corpus {corpus:?}")]
    SourceMismatch { source_tag: String, corpus: String },
    #[error("bug {0:?} has no candidates")]
    NoCandidates(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    LikelyCorrect,
    LikelyIncorrect,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::LikelyCorrect => "likely_correct",
            Verdict::LikelyIncorrect => "likely_incorrect",
        }
    }
}

/// A patch reduced to what screening needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredPatch {
    pub patch_id: String,
    pub corpus: String,
    pub label: Label,
    pub score: f64,
}

/// Counts and recalls of a screening run against ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FilterOutcome {
    pub total_correct: usize,
    pub total_incorrect: usize,
    /// Correct patches kept (+CP).
    pub kept_correct: usize,
    /// Incorrect patches filtered out (-IP).
    pub filtered_incorrect: usize,
}

impl FilterOutcome {
    pub fn plus_recall(&self) -> f64 {
        ratio(self.kept_correct, self.total_correct)
    }

    pub fn minus_recall(&self) -> f64 {
        ratio(self.filtered_incorrect, self.total_incorrect)
    }

    pub fn tally(patches: &[ScoredPatch], verdicts: &[Verdict]) -> Self {
        let mut out = FilterOutcome::default();
        for (p, v) in patches.iter().zip(verdicts) {
            match p.label {
                Label::Correct => {
                    out.total_correct += 1;
                    if *v == Verdict::LikelyCorrect {
                        out.kept_correct += 1;
                    }
                }
                Label::Incorrect => {
                    out.total_incorrect += 1;
                    if *v == Verdict::LikelyIncorrect {
                        out.filtered_incorrect += 1;
                    }
                }
                Label::Unlabeled => {}
            }
        }
        out
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

fn is_percent_scale(x: f64) -> bool {
    x.abs() > 1.0 + 1e-9
}

/// Screen patches with a similarity threshold. Scores strictly below the
/// threshold are flagged as likely incorrect; a score equal to the threshold
/// is kept.
pub fn filter_by_threshold(
    patches: &[ScoredPatch],
    threshold: &ThresholdSpec,
) -> Result<(Vec<Verdict>, FilterOutcome), ScreenError> {
    if let Some(p) = patches.iter().find(|p| !threshold.applies_to(&p.corpus)) {
        return Err(ScreenError::SourceMismatch {
            source_tag: threshold.source_tag.clone(),
            corpus: p.corpus.clone(),
        });
    }
    if !patches.is_empty() {
        let lo = patches.iter().map(|p| p.score).fold(f64::INFINITY, f64::min);
        let hi = patches.iter().map(|p| p.score).fold(f64::NEG_INFINITY, f64::max);
        let scores_percent = is_percent_scale(lo) || is_percent_scale(hi);
        if is_percent_scale(threshold.value) != scores_percent {
            return Err(ScreenError::ScaleMismatch {
                threshold: threshold.value,
                lo,
                hi,
            });
        }
    }
    let verdicts: Vec<Verdict> = patches
        .iter()
        .map(|p| {
            if p.score < threshold.value {
                Verdict::LikelyIncorrect
            } else {
                Verdict::LikelyCorrect
            }
        })
        .collect();
    let outcome = FilterOutcome::tally(patches, &verdicts);
    Ok((verdicts, outcome))
}

/// Chosen patch id per bug, and a verdict per patch id.
pub type Top1 = (BTreeMap<String, String>, BTreeMap<String, Verdict>);

/// Per bug, keep the most similar candidate. Equal scores go to the
/// lexicographically smallest patch id. Returns the chosen patch id per bug
/// and a verdict for every input patch (chosen ones correct, the rest
/// incorrect).
pub fn rank_top1(
    candidates_per_bug: &BTreeMap<String, Vec<ScoredPatch>>,
) -> Result<Top1, ScreenError> {
    let mut chosen = BTreeMap::new();
    let mut verdicts = BTreeMap::new();
    for (bug, cands) in candidates_per_bug {
        let best = cands
            .iter()
            .reduce(|best, c| {
                if c.score > best.score || (c.score == best.score && c.patch_id < best.patch_id) {
                    c
                } else {
                    best
                }
            })
            .ok_or_else(|| ScreenError::NoCandidates(bug.clone()))?;
        for c in cands {
            let v = if c.patch_id == best.patch_id {
                Verdict::LikelyCorrect
            } else {
                Verdict::LikelyIncorrect
            };
            verdicts.insert(c.patch_id.clone(), v);
        }
        chosen.insert(bug.clone(), best.patch_id.clone());
    }
    Ok((chosen, verdicts))
}

//! Classification metrics over probability scores, where `true` marks a
//! correct patch (the positive class).

use crate::simstat::midranks;

use super::LearnError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricsRow {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub auc: f64,
}

pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

impl MetricsRow {
    pub fn from_parts(accuracy: f64, precision: f64, recall: f64, auc: f64) -> Self {
        MetricsRow {
            accuracy,
            precision,
            recall,
            f1: f1_score(precision, recall),
            auc,
        }
    }

    /// Average accuracy, precision, recall and AUC; F1 is recomputed from the
    /// averaged precision and recall.
    pub fn average(rows: &[MetricsRow]) -> MetricsRow {
        let n = rows.len().max(1) as f64;
        let avg = |f: fn(&MetricsRow) -> f64| rows.iter().map(f).sum::<f64>() / n;
        MetricsRow::from_parts(
            avg(|r| r.accuracy),
            avg(|r| r.precision),
            avg(|r| r.recall),
            avg(|r| r.auc),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Confusion {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    pub fn_: usize,
}

/// Predict positive when `score >= cut`.
pub fn confusion_at(scores: &[f64], labels: &[bool], cut: f64) -> Confusion {
    let mut c = Confusion::default();
    for (&s, &l) in scores.iter().zip(labels) {
        match (s >= cut, l) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.fn_ += 1,
            (false, false) => c.tn += 1,
        }
    }
    c
}

fn class_counts(labels: &[bool]) -> Result<(usize, usize), LearnError> {
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(LearnError::SingleClass);
    }
    Ok((pos, neg))
}

/// Accuracy, precision, recall and F1 at `cut`, AUC over all scores.
pub fn metrics_at(scores: &[f64], labels: &[bool], cut: f64) -> Result<MetricsRow, LearnError> {
    let (_, auc) = roc_auc(scores, labels)?;
    let c = confusion_at(scores, labels, cut);
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    Ok(MetricsRow::from_parts(
        ratio(c.tp + c.tn, labels.len()),
        ratio(c.tp, c.tp + c.fp),
        ratio(c.tp, c.tp + c.fn_),
        auc,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Scores `>= threshold` are predicted positive. The first point uses
    /// `+inf`.
    pub threshold: f64,
}

/// ROC curve with one point per distinct score, and the area under it as
/// the Mann-Whitney probability `P(s_pos > s_neg) + P(s_pos = s_neg) / 2`.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<(Vec<RocPoint>, f64), LearnError> {
    if scores.len() != labels.len() {
        return Err(LearnError::LengthMismatch(scores.len(), labels.len()));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(LearnError::NonFiniteFeature);
    }
    let (pos, neg) = class_counts(labels)?;

    let (ranks, _) = midranks(scores);
    let rank_sum: f64 = ranks.iter().zip(labels).filter(|(_, &l)| l).map(|(r, _)| r).sum();
    let p = pos as f64;
    let u = rank_sum - p * (p + 1.0) / 2.0;
    let auc = u / (p * neg as f64);

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: f64::INFINITY,
    }];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        while i < order.len() && scores[order[i]] == s {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push(RocPoint {
            fpr: fp as f64 / neg as f64,
            tpr: tp as f64 / pos as f64,
            threshold: s,
        });
    }
    Ok((points, auc))
}

/// Confusion counts at cuts 0.1, 0.2, ..., 0.9.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionSweep {
    pub rows: Vec<(f64, Confusion)>,
}

pub fn sweep_thresholds() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

pub fn confusion_sweep(scores: &[f64], labels: &[bool], thresholds: &[f64]) -> ConfusionSweep {
    ConfusionSweep {
        rows: thresholds
            .iter()
            .map(|&t| (t, confusion_at(scores, labels, t)))
            .collect(),
    }
}

/// Highest cut that keeps every positive: the minimum positive score.
/// Returns the cut and the number of negatives strictly below it.
pub fn zero_fn_threshold(scores: &[f64], labels: &[bool]) -> Result<(f64, usize), LearnError> {
    class_counts(labels)?;
    let threshold = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l)
        .map(|(&s, _)| s)
        .fold(f64::INFINITY, f64::min);
    let excluded = scores
        .iter()
        .zip(labels)
        .filter(|(&s, &l)| !l && s < threshold)
        .count();
    Ok((threshold, excluded))
}

//! Supervised patch classifiers and their evaluation.

mod bayes;
mod cv;
mod logistic;
mod metrics;
mod model_io;
mod tree;

pub use bayes::{GaussianNb, VAR_SMOOTHING};
pub use cv::{kfold_cv, stratified_folds, CvReport, DEFAULT_CUT};
pub use logistic::{logistic_gradient, logistic_objective, LogisticConfig, LogisticFit, LogisticModel, Standardizer};
pub use metrics::{
    confusion_at, confusion_sweep, f1_score, metrics_at, roc_auc, sweep_thresholds, zero_fn_threshold, Confusion,
    ConfusionSweep, MetricsRow, RocPoint,
};
pub use tree::{gini, DecisionTree, Node, TreeConfig};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LearnError {
    #[error("training data must contain both classes")]
    SingleClass,
    #[error("non-finite feature value")]
    NonFiniteFeature,
    #[error("training set is empty")]
    Empty,
    #[error("rows have inconsistent dimensions")]
    Ragged,
    #[error("length mismatch: {0} rows vs {1} labels")]
    LengthMismatch(usize, usize),
    #[error("{} class has {count} members, fewer than {folds} folds", if *positive { "positive" } else { "negative" })]
    ClassTooSmall { positive: bool, count: usize, folds: usize },
    #[error("need at least 2 folds, got {0}")]
    BadFoldCount(usize),
    #[error("model expects {expected} features, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("model file line {line}: {message}")]
    ModelSyntax { line: usize, message: String },
}

pub(crate) fn check_training_set(x: &[Vec<f64>], y: &[bool]) -> Result<(), LearnError> {
    if x.is_empty() {
        return Err(LearnError::Empty);
    }
    if x.len() != y.len() {
        return Err(LearnError::LengthMismatch(x.len(), y.len()));
    }
    let d = x[0].len();
    if x.iter().any(|r| r.len() != d) {
        return Err(LearnError::Ragged);
    }
    if x.iter().flatten().any(|v| !v.is_finite()) {
        return Err(LearnError::NonFiniteFeature);
    }
    if y.iter().all(|&l| l) || y.iter().all(|&l| !l) {
        return Err(LearnError::SingleClass);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LearnerKind {
    LogisticRegression,
    DecisionTree,
    NaiveBayes,
}

impl LearnerKind {
    pub fn short_name(self) -> &'static str {
        match self {
            LearnerKind::LogisticRegression => "lr",
            LearnerKind::DecisionTree => "dt",
            LearnerKind::NaiveBayes => "nb",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            LearnerKind::LogisticRegression => "Logistic regression",
            LearnerKind::DecisionTree => "DecisionTree",
            LearnerKind::NaiveBayes => "Naive bayes",
        }
    }

    pub fn default_config(self) -> LearnerConfig {
        match self {
            LearnerKind::LogisticRegression => LearnerConfig::Logistic(LogisticConfig::default()),
            LearnerKind::DecisionTree => LearnerConfig::Tree(TreeConfig::default()),
            LearnerKind::NaiveBayes => LearnerConfig::Bayes,
        }
    }
}

impl fmt::Display for LearnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for LearnerKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lr" => Ok(LearnerKind::LogisticRegression),
            "dt" => Ok(LearnerKind::DecisionTree),
            "nb" => Ok(LearnerKind::NaiveBayes),
            _ => Err(format!("unknown learner {s:?} (expected lr, dt or nb)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LearnerConfig {
    Logistic(LogisticConfig),
    Tree(TreeConfig),
    Bayes,
}

impl LearnerConfig {
    pub fn kind(&self) -> LearnerKind {
        match self {
            LearnerConfig::Logistic(_) => LearnerKind::LogisticRegression,
            LearnerConfig::Tree(_) => LearnerKind::DecisionTree,
            LearnerConfig::Bayes => LearnerKind::NaiveBayes,
        }
    }
}

/// A fitted classifier. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub enum Learner {
    Logistic(LogisticModel),
    Tree(DecisionTree),
    Bayes(GaussianNb),
}

impl Learner {
    pub fn fit(config: &LearnerConfig, x: &[Vec<f64>], y: &[bool]) -> Result<Self, LearnError> {
        Ok(match config {
            LearnerConfig::Logistic(c) => Learner::Logistic(LogisticModel::fit(x, y, c)?),
            LearnerConfig::Tree(c) => Learner::Tree(DecisionTree::fit(x, y, c)?),
            LearnerConfig::Bayes => Learner::Bayes(GaussianNb::fit(x, y)?),
        })
    }

    pub fn kind(&self) -> LearnerKind {
        match self {
            Learner::Logistic(_) => LearnerKind::LogisticRegression,
            Learner::Tree(_) => LearnerKind::DecisionTree,
            Learner::Bayes(_) => LearnerKind::NaiveBayes,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Learner::Logistic(m) => m.weights.len(),
            Learner::Tree(t) => t.dim,
            Learner::Bayes(b) => b.means[0].len(),
        }
    }

    /// Probability that the row is a correct patch, in `[0, 1]`.
    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        match self {
            Learner::Logistic(m) => m.predict_proba(row),
            Learner::Tree(t) => t.predict_proba(row),
            Learner::Bayes(b) => b.predict_proba(row),
        }
    }

    pub fn predict_checked(&self, row: &[f64]) -> Result<f64, LearnError> {
        if row.len() != self.dim() {
            return Err(LearnError::DimensionMismatch {
                expected: self.dim(),
                found: row.len(),
            });
        }
        Ok(self.predict_proba(row))
    }

    pub fn to_text(&self) -> String {
        model_io::write_model(self)
    }

    pub fn from_text(text: &str) -> Result<Self, LearnError> {
        model_io::parse_model(text)
    }
}

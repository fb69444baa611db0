use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::metrics::{metrics_at, MetricsRow};
use super::{Learner, LearnerConfig, LearnError};

/// Probability cut used for accuracy, precision, recall and F1.
pub const DEFAULT_CUT: f64 = 0.5;

/// Split row indices into `k` stratified folds. Each class is shuffled with
/// the seeded RNG and dealt round-robin, continuing the deal across classes
/// so fold sizes differ by at most one overall and per class.
pub fn stratified_folds(labels: &[bool], k: usize, seed: u64) -> Result<Vec<Vec<usize>>, LearnError> {
    if k < 2 {
        return Err(LearnError::BadFoldCount(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for class in [true, false] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if idx.len() < k {
            return Err(LearnError::ClassTooSmall {
                positive: class,
                count: idx.len(),
                folds: k,
            });
        }
        idx.shuffle(&mut rng);
        for i in idx {
            folds[next].push(i);
            next = (next + 1) % k;
        }
    }
    folds.iter_mut().for_each(|f| f.sort_unstable());
    Ok(folds)
}

#[derive(Debug, Clone)]
pub struct CvReport {
    pub per_fold: Vec<MetricsRow>,
    pub mean: MetricsRow,
    /// Out-of-fold positive-class probability for every input row.
    pub oof_scores: Vec<f64>,
    pub folds: Vec<Vec<usize>>,
}

/// Stratified k-fold cross validation. Fold models are fitted
/// independently; metrics are taken at [`DEFAULT_CUT`] per fold and
/// averaged.
pub fn kfold_cv(
    x: &[Vec<f64>],
    y: &[bool],
    k: usize,
    seed: u64,
    config: &LearnerConfig,
) -> Result<CvReport, LearnError> {
    if x.len() != y.len() {
        return Err(LearnError::LengthMismatch(x.len(), y.len()));
    }
    let folds = stratified_folds(y, k, seed)?;
    let mut in_test = vec![usize::MAX; x.len()];
    for (f, fold) in folds.iter().enumerate() {
        for &i in fold {
            in_test[i] = f;
        }
    }
    let mut oof = vec![0.0; x.len()];
    let mut per_fold = Vec::with_capacity(k);
    for (f, fold) in folds.iter().enumerate() {
        let train: Vec<usize> = (0..x.len()).filter(|&i| in_test[i] != f).collect();
        let tx: Vec<Vec<f64>> = train.iter().map(|&i| x[i].clone()).collect();
        let ty: Vec<bool> = train.iter().map(|&i| y[i]).collect();
        let model = Learner::fit(config, &tx, &ty)?;
        let scores: Vec<f64> = fold.iter().map(|&i| model.predict_proba(&x[i])).collect();
        let labels: Vec<bool> = fold.iter().map(|&i| y[i]).collect();
        for (&i, &s) in fold.iter().zip(&scores) {
            oof[i] = s;
        }
        per_fold.push(metrics_at(&scores, &labels, DEFAULT_CUT)?);
    }
    Ok(CvReport {
        mean: MetricsRow::average(&per_fold),
        per_fold,
        oof_scores: oof,
        folds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_sizes() {
        let labels: Vec<bool> = (0..1000).map(|i| i % 3 == 0).collect();
        let folds = stratified_folds(&labels, 5, 1).unwrap();
        assert!(folds.iter().all(|f| f.len() == 200));
    }

    #[test]
    fn too_small() {
        let labels = [true, true, false, false, false, false, false];
        assert!(matches!(
            stratified_folds(&labels, 5, 0),
            Err(LearnError::ClassTooSmall { positive: true, count: 2, folds: 5 })
        ));
        assert!(stratified_folds(&labels, 1, 0).is_err());
    }
}

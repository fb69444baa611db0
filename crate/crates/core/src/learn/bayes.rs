//! Gaussian naive Bayes.

use super::{check_training_set, LearnError};

/// Variance floor, relative to the largest feature variance.
pub const VAR_SMOOTHING: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNb {
    /// Index 0 = negative class, 1 = positive class.
    pub priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub vars: [Vec<f64>; 2],
    pub epsilon: f64,
}

fn column_stats(rows: &[&Vec<f64>], d: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let mut mean = vec![0.0; d];
    for r in rows {
        for j in 0..d {
            mean[j] += r[j];
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = vec![0.0; d];
    for r in rows {
        for j in 0..d {
            let c = r[j] - mean[j];
            var[j] += c * c;
        }
    }
    var.iter_mut().for_each(|v| *v /= n);
    (mean, var)
}

impl GaussianNb {
    pub fn fit(x: &[Vec<f64>], y: &[bool]) -> Result<Self, LearnError> {
        check_training_set(x, y)?;
        let d = x[0].len();
        let all: Vec<&Vec<f64>> = x.iter().collect();
        let (_, total_var) = column_stats(&all, d);
        let max_var = total_var.iter().copied().fold(0.0, f64::max);
        let mut epsilon = VAR_SMOOTHING * max_var;
        if epsilon <= 0.0 {
            epsilon = VAR_SMOOTHING;
        }
        let mut priors = [0.0; 2];
        let mut means: [Vec<f64>; 2] = Default::default();
        let mut vars: [Vec<f64>; 2] = Default::default();
        for class in [false, true] {
            let rows: Vec<&Vec<f64>> = x
                .iter()
                .zip(y)
                .filter(|(_, &l)| l == class)
                .map(|(r, _)| r)
                .collect();
            let c = class as usize;
            priors[c] = rows.len() as f64 / x.len() as f64;
            let (m, v) = column_stats(&rows, d);
            means[c] = m;
            vars[c] = v.into_iter().map(|v| v + epsilon).collect();
        }
        Ok(GaussianNb {
            priors,
            means,
            vars,
            epsilon,
        })
    }

    /// Joint log-likelihood `log P(class) + sum_j log N(x_j; mu, var)`.
    pub fn joint_log_likelihood(&self, row: &[f64], class: usize) -> f64 {
        let mut ll = self.priors[class].ln();
        for ((x, mu), var) in row.iter().zip(&self.means[class]).zip(&self.vars[class]) {
            ll -= 0.5 * (2.0 * std::f64::consts::PI * var).ln();
            ll -= (x - mu) * (x - mu) / (2.0 * var);
        }
        ll
    }

    /// Posterior probability of the positive class.
    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        let l0 = self.joint_log_likelihood(row, 0);
        let l1 = self.joint_log_likelihood(row, 1);
        super::logistic::sigmoid(l1 - l0)
    }
}

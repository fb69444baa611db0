//! L2-regularized logistic regression on standardized features, fitted by
//! full-batch gradient descent.

use super::{check_training_set, LearnError};

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticConfig {
    /// Regularization strength. The objective is
    /// `(sum_i loss_i + l2/2 * |w|^2) / m`; the bias is not penalized.
    pub l2: f64,
    /// Initial step size; step `t` (1-based) uses `learning_rate / sqrt(t)`.
    pub learning_rate: f64,
    pub iterations: usize,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig {
            l2: 1.0,
            learning_rate: 0.1,
            iterations: 500,
        }
    }
}

/// Per-column affine map to zero mean and unit (population) variance.
/// Constant columns get scale 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &[Vec<f64>]) -> Self {
        let d = x[0].len();
        let m = x.len() as f64;
        let mut mean = vec![0.0; d];
        for row in x {
            for (acc, v) in mean.iter_mut().zip(row) {
                *acc += v;
            }
        }
        mean.iter_mut().for_each(|v| *v /= m);
        let mut var = vec![0.0; d];
        for row in x {
            for j in 0..d {
                let c = row[j] - mean[j];
                var[j] += c * c;
            }
        }
        let scale = var
            .into_iter()
            .map(|v| {
                let s = (v / m).sqrt();
                if s > 0.0 {
                    s
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { mean, scale }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.mean.iter().zip(&self.scale))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }

    pub fn transform(&self, x: &[Vec<f64>]) -> Vec<Vec<f64>> {
        x.iter().map(|r| self.transform_row(r)).collect()
    }
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// log(1 + e^z)
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

fn linear(weights: &[f64], bias: f64, row: &[f64]) -> f64 {
    bias + weights.iter().zip(row).map(|(w, x)| w * x).sum::<f64>()
}

/// Regularized mean logistic loss. `x` is assumed already standardized.
pub fn logistic_objective(weights: &[f64], bias: f64, x: &[Vec<f64>], y: &[bool], l2: f64) -> f64 {
    let m = x.len() as f64;
    let data: f64 = x
        .iter()
        .zip(y)
        .map(|(row, &label)| {
            let z = linear(weights, bias, row);
            softplus(z) - if label { z } else { 0.0 }
        })
        .sum();
    let reg = 0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>();
    (data + reg) / m
}

/// Gradient of [`logistic_objective`] with respect to `(weights, bias)`.
pub fn logistic_gradient(
    weights: &[f64],
    bias: f64,
    x: &[Vec<f64>],
    y: &[bool],
    l2: f64,
) -> (Vec<f64>, f64) {
    let m = x.len() as f64;
    let mut gw: Vec<f64> = weights.iter().map(|w| l2 * w).collect();
    let mut gb = 0.0;
    for (row, &label) in x.iter().zip(y) {
        let r = sigmoid(linear(weights, bias, row)) - if label { 1.0 } else { 0.0 };
        gb += r;
        for (g, v) in gw.iter_mut().zip(row) {
            *g += r * v;
        }
    }
    gw.iter_mut().for_each(|g| *g /= m);
    (gw, gb / m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    pub config: LogisticConfig,
    pub standardizer: Standardizer,
    pub weights: Vec<f64>,
    pub bias: f64,
}

/// Fitted model plus the objective value before every step and after the
/// last one.
#[derive(Debug, Clone)]
pub struct LogisticFit {
    pub model: LogisticModel,
    pub loss_history: Vec<f64>,
}

impl LogisticModel {
    pub fn fit(x: &[Vec<f64>], y: &[bool], config: &LogisticConfig) -> Result<Self, LearnError> {
        Ok(Self::fit_traced(x, y, config)?.model)
    }

    pub fn fit_traced(x: &[Vec<f64>], y: &[bool], config: &LogisticConfig) -> Result<LogisticFit, LearnError> {
        check_training_set(x, y)?;
        let standardizer = Standardizer::fit(x);
        let xs = standardizer.transform(x);
        let d = xs[0].len();
        let mut weights = vec![0.0; d];
        let mut bias = 0.0;
        let mut loss_history = Vec::with_capacity(config.iterations + 1);
        for t in 1..=config.iterations {
            loss_history.push(logistic_objective(&weights, bias, &xs, y, config.l2));
            let (gw, gb) = logistic_gradient(&weights, bias, &xs, y, config.l2);
            let step = config.learning_rate / (t as f64).sqrt();
            for (w, g) in weights.iter_mut().zip(&gw) {
                *w -= step * g;
            }
            bias -= step * gb;
        }
        loss_history.push(logistic_objective(&weights, bias, &xs, y, config.l2));
        Ok(LogisticFit {
            model: LogisticModel {
                config: config.clone(),
                standardizer,
                weights,
                bias,
            },
            loss_history,
        })
    }

    pub fn decision(&self, row: &[f64]) -> f64 {
        linear(&self.weights, self.bias, &self.standardizer.transform_row(row))
    }

    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        sigmoid(self.decision(row))
    }
}

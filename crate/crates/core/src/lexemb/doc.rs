//! Paragraph vectors, distributed bag-of-words variant.
//!
//! Every document owns a vector that is trained to predict the document's
//! own tokens against sampled noise tokens (negative sampling). Token output
//! vectors are shared across documents. Inference for an unseen document
//! runs the same objective with the token vectors frozen.
//!
//! Noise tokens are drawn once per (token, position) pair from a seeded
//! stream rather than resampled at every step. Training is then plain
//! stochastic descent on one fixed objective, the reported epoch loss is
//! that objective, and identical documents (or a training document and its
//! re-inference) face identical noise.

use std::collections::HashMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tokenize::TokenSequence;
use super::EmbedError;

pub const DEFAULT_DOC_DIM: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct DocEmbedderConfig {
    pub dim: usize,
    pub epochs: usize,
    /// Noise tokens drawn per positive token.
    pub negative: usize,
    /// Learning rate at the first step; decays linearly to `min_alpha`.
    pub alpha: f64,
    pub min_alpha: f64,
    pub seed: u64,
}

impl Default for DocEmbedderConfig {
    fn default() -> Self {
        DocEmbedderConfig {
            dim: DEFAULT_DOC_DIM,
            epochs: 40,
            negative: 5,
            alpha: 0.025,
            min_alpha: 0.0001,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DocEmbedder {
    config: DocEmbedderConfig,
    vocab: HashMap<String, usize>,
    /// Row-major `vocab.len() x dim` output vectors.
    output: Vec<f64>,
    noise: WeightedIndex<f64>,
    docs: Vec<Vec<f64>>,
    epoch_losses: Vec<f64>,
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// ln(sigmoid(x)), stable for large |x|.
fn log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn init_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|_| (rng.gen::<f64>() - 0.5) / dim as f64)
        .collect()
}

fn learning_rate(cfg: &DocEmbedderConfig, step: usize, total: usize) -> f64 {
    let progress = step as f64 / total.max(1) as f64;
    (cfg.alpha - (cfg.alpha - cfg.min_alpha) * progress).max(cfg.min_alpha)
}

impl DocEmbedder {
    /// Train document and token vectors on `corpus`. Single-threaded and
    /// deterministic for a given config.
    pub fn train(corpus: &[TokenSequence], config: DocEmbedderConfig) -> Result<Self, EmbedError> {
        if corpus.is_empty() {
            return Err(EmbedError::EmptyCorpus);
        }
        if config.dim < 2 {
            return Err(EmbedError::BadDimension(config.dim));
        }
        let dim = config.dim;

        let mut vocab = HashMap::new();
        let mut counts: Vec<f64> = Vec::new();
        let mut encoded: Vec<Vec<usize>> = Vec::with_capacity(corpus.len());
        for doc in corpus {
            let ids = doc
                .tokens()
                .iter()
                .map(|t| {
                    let next = vocab.len();
                    let id = *vocab.entry(t.clone()).or_insert(next);
                    if id == counts.len() {
                        counts.push(0.0);
                    }
                    counts[id] += 1.0;
                    id
                })
                .collect();
            encoded.push(ids);
        }
        if vocab.is_empty() {
            return Err(EmbedError::EmptyCorpus);
        }
        let noise = WeightedIndex::new(counts.iter().map(|c| c.powf(0.75)))
            .expect("token counts are positive");

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut docs: Vec<Vec<f64>> = (0..corpus.len()).map(|_| init_vector(&mut rng, dim)).collect();
        let mut output = vec![0.0; vocab.len() * dim];

        let negatives: Vec<Vec<Vec<usize>>> = encoded
            .iter()
            .map(|ids| document_negatives(&noise, config.seed, ids, config.negative))
            .collect();

        let total_steps = config.epochs * corpus.len();
        let mut step = 0;
        let mut order: Vec<usize> = (0..corpus.len()).collect();
        let mut epoch_losses = Vec::with_capacity(config.epochs);
        let mut grad = vec![0.0; dim];
        for _ in 0..config.epochs {
            order.shuffle(&mut rng);
            for &d in &order {
                let alpha = learning_rate(&config, step, total_steps);
                step += 1;
                for (pos, &w) in encoded[d].iter().enumerate() {
                    grad.iter_mut().for_each(|g| *g = 0.0);
                    let negs = &negatives[d][pos];
                    let targets = std::iter::once((w, 1.0)).chain(negs.iter().map(|&n| (n, 0.0)));
                    for (t, label) in targets {
                        let row = &mut output[t * dim..(t + 1) * dim];
                        let g = (label - sigmoid(dot(&docs[d], row))) * alpha;
                        for k in 0..dim {
                            grad[k] += g * row[k];
                            row[k] += g * docs[d][k];
                        }
                    }
                    for k in 0..dim {
                        docs[d][k] += grad[k];
                    }
                }
            }
            epoch_losses.push(objective(&docs, &output, dim, &encoded, &negatives));
        }

        Ok(DocEmbedder {
            config,
            vocab,
            output,
            noise,
            docs,
            epoch_losses,
        })
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    pub fn config(&self) -> &DocEmbedderConfig {
        &self.config
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    /// Trained vector of corpus document `index`.
    pub fn doc_vector(&self, index: usize) -> Option<&[f64]> {
        self.docs.get(index).map(Vec::as_slice)
    }

    /// Mean negative-sampling loss over all (document, token) pairs after
    /// each epoch.
    pub fn epoch_losses(&self) -> &[f64] {
        &self.epoch_losses
    }

    /// Infer a vector for `tokens` with token vectors frozen. Tokens outside
    /// the training vocabulary are ignored. The same input always yields the
    /// same vector.
    pub fn infer(&self, tokens: &TokenSequence) -> Vec<f64> {
        let dim = self.config.dim;
        let ids: Vec<usize> = tokens
            .tokens()
            .iter()
            .filter_map(|t| self.vocab.get(t).copied())
            .collect();
        let negatives = document_negatives(&self.noise, self.config.seed, &ids, self.config.negative);
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let mut doc = init_vector(&mut rng, dim);
        let mut grad = vec![0.0; dim];
        let epochs = self.config.epochs;
        for epoch in 0..epochs {
            let alpha = learning_rate(&self.config, epoch, epochs);
            for (&w, negs) in ids.iter().zip(&negatives) {
                grad.iter_mut().for_each(|g| *g = 0.0);
                for (t, label) in std::iter::once((w, 1.0)).chain(negs.iter().map(|&n| (n, 0.0))) {
                    let row = &self.output[t * dim..(t + 1) * dim];
                    let g = (label - sigmoid(dot(&doc, row))) * alpha;
                    for k in 0..dim {
                        grad[k] += g * row[k];
                    }
                }
                for k in 0..dim {
                    doc[k] += grad[k];
                }
            }
        }
        doc
    }
}

/// Noise tokens for every position of a document. The stream for a
/// position depends only on the seed, the token and the position.
fn document_negatives(noise: &WeightedIndex<f64>, seed: u64, ids: &[usize], k: usize) -> Vec<Vec<usize>> {
    ids.iter()
        .enumerate()
        .map(|(pos, &w)| {
            let key = (w as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (pos as u64).rotate_left(32);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ key);
            // a draw that hits the positive token is dropped, not redrawn
            (0..k).map(|_| noise.sample(&mut rng)).filter(|&n| n != w).collect()
        })
        .collect()
}

fn objective(
    docs: &[Vec<f64>],
    output: &[f64],
    dim: usize,
    encoded: &[Vec<usize>],
    negatives: &[Vec<Vec<usize>>],
) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for (d, ids) in encoded.iter().enumerate() {
        for (pos, &w) in ids.iter().enumerate() {
            let row = |t: usize| &output[t * dim..(t + 1) * dim];
            let mut l = -log_sigmoid(dot(&docs[d], row(w)));
            for &n in &negatives[d][pos] {
                l -= log_sigmoid(-dot(&docs[d], row(n)));
            }
            total += l;
            count += 1;
        }
    }
    total / count.max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexemb::tokenize;

    #[test]
    fn empty_corpus() {
        assert!(matches!(
            DocEmbedder::train(&[], DocEmbedderConfig::default()),
            Err(EmbedError::EmptyCorpus)
        ));
        assert!(matches!(
            DocEmbedder::train(&[tokenize("")], DocEmbedderConfig::default()),
            Err(EmbedError::EmptyCorpus)
        ));
    }

    #[test]
    fn log_sigmoid_is_stable() {
        assert!((log_sigmoid(0.0) - 0.5f64.ln()).abs() < 1e-15);
        assert!(log_sigmoid(800.0).abs() < 1e-300);
        assert!((log_sigmoid(-800.0) + 800.0).abs() < 1e-9);
        assert!((sigmoid(3.0) + sigmoid(-3.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inference_is_repeatable() {
        let corpus = vec![tokenize("a b c d"), tokenize("c d e f"), tokenize("x y z")];
        let model = DocEmbedder::train(
            &corpus,
            DocEmbedderConfig {
                dim: 16,
                epochs: 5,
                seed: 3,
                ..Default::default()
            },
        )
        .unwrap();
        let q = tokenize("a c e unknown");
        assert_eq!(model.infer(&q), model.infer(&q));
        assert_eq!(model.infer(&q).len(), 16);
    }

    #[test]
    fn training_is_deterministic() {
        let corpus = vec![tokenize("a b c"), tokenize("d e f")];
        let cfg = DocEmbedderConfig {
            dim: 8,
            epochs: 3,
            seed: 11,
            ..Default::default()
        };
        let a = DocEmbedder::train(&corpus, cfg.clone()).unwrap();
        let b = DocEmbedder::train(&corpus, cfg).unwrap();
        assert_eq!(a.doc_vector(0), b.doc_vector(0));
        assert_eq!(a.epoch_losses(), b.epoch_losses());
    }
}

//! Binary CART classifier with Gini impurity.

use super::{check_training_set, LearnError};

#[derive(Debug, Clone, PartialEq)]
pub struct TreeConfig {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: 8,
            min_samples_leaf: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// Rows with `x[feature] <= threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        /// Fraction of positive training rows that reached this leaf.
        probability: f64,
        samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub config: TreeConfig,
    pub dim: usize,
    /// Node 0 is the root; children always have larger indices than their
    /// parent.
    pub nodes: Vec<Node>,
}

/// Gini impurity of a node with `pos` positives out of `n`.
pub fn gini(pos: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = pos as f64 / n as f64;
    2.0 * p * (1.0 - p)
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    gain: f64,
}

fn best_split(x: &[Vec<f64>], y: &[bool], rows: &[usize], min_leaf: usize) -> Option<SplitChoice> {
    let n = rows.len();
    let total_pos = rows.iter().filter(|&&r| y[r]).count();
    let parent = gini(total_pos, n);
    let mut best: Option<SplitChoice> = None;
    let mut sorted = rows.to_vec();
    #[allow(clippy::needless_range_loop)]
    for feature in 0..x[0].len() {
        sorted.sort_by(|&a, &b| x[a][feature].total_cmp(&x[b][feature]));
        let mut left_pos = 0;
        for i in 1..n {
            if y[sorted[i - 1]] {
                left_pos += 1;
            }
            let lo = x[sorted[i - 1]][feature];
            let hi = x[sorted[i]][feature];
            if lo == hi || i < min_leaf || n - i < min_leaf {
                continue;
            }
            let mut threshold = lo + (hi - lo) / 2.0;
            if threshold >= hi {
                threshold = lo;
            }
            let (nl, nr) = (i as f64, (n - i) as f64);
            let child = (nl * gini(left_pos, i) + nr * gini(total_pos - left_pos, n - i)) / n as f64;
            let gain = parent - child;
            // Strictly better only: earlier features and lower thresholds win ties.
            let better = match &best {
                None => gain > 1e-12,
                Some(b) => gain > b.gain + 1e-12,
            };
            if better {
                best = Some(SplitChoice {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

impl DecisionTree {
    pub fn fit(x: &[Vec<f64>], y: &[bool], config: &TreeConfig) -> Result<Self, LearnError> {
        check_training_set(x, y)?;
        let mut tree = DecisionTree {
            config: config.clone(),
            dim: x[0].len(),
            nodes: Vec::new(),
        };
        let rows: Vec<usize> = (0..x.len()).collect();
        tree.grow(x, y, rows, 0);
        Ok(tree)
    }

    fn grow(&mut self, x: &[Vec<f64>], y: &[bool], rows: Vec<usize>, depth: usize) -> usize {
        let id = self.nodes.len();
        let pos = rows.iter().filter(|&&r| y[r]).count();
        let leaf = Node::Leaf {
            probability: pos as f64 / rows.len() as f64,
            samples: rows.len(),
        };
        self.nodes.push(leaf);
        let min_leaf = self.config.min_samples_leaf.max(1);
        if depth >= self.config.max_depth || pos == 0 || pos == rows.len() || rows.len() < 2 * min_leaf {
            return id;
        }
        let Some(split) = best_split(x, y, &rows, min_leaf) else {
            return id;
        };
        let (l, r): (Vec<usize>, Vec<usize>) = rows
            .into_iter()
            .partition(|&i| x[i][split.feature] <= split.threshold);
        let left = self.grow(x, y, l, depth + 1);
        let right = self.grow(x, y, r, depth + 1);
        self.nodes[id] = Node::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        id
    }

    pub fn predict_proba(&self, row: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { probability, .. } => return *probability,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if row[*feature] <= *threshold { *left } else { *right },
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], i: usize) -> usize {
            match &nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Structural check used when loading untrusted model files.
    pub(crate) fn validate(&self) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("tree has no nodes".into());
        }
        for (i, n) in self.nodes.iter().enumerate() {
            match n {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    if *feature >= self.dim {
                        return Err(format!("node {i}: feature {feature} out of range"));
                    }
                    if !threshold.is_finite() {
                        return Err(format!("node {i}: non-finite threshold"));
                    }
                    if *left <= i || *right <= i || *left >= self.nodes.len() || *right >= self.nodes.len() {
                        return Err(format!("node {i}: bad child index"));
                    }
                }
                Node::Leaf { probability, .. } => {
                    if !(0.0..=1.0).contains(probability) {
                        return Err(format!("node {i}: probability out of range"));
                    }
                }
            }
        }
        Ok(())
    }
}

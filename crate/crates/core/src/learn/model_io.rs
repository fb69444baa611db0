//! Plain-text model files.
//!
//! ```text
//! patchsift-model 1
//! kind lr
//! dim 3
//! l2 1
//! learning_rate 0.1
//! iterations 500
//! mean 0.5 1 -2
//! scale 1 0.25 3
//! weights 0.1 -0.2 0.3
//! bias 0.05
//! ```
//!
//! Trees list their nodes as `node <index> split <feature> <threshold>
//! <left> <right>` or `node <index> leaf <probability> <samples>`; naive
//! Bayes stores `prior`, `mean0`/`mean1` and `var0`/`var1`. Numbers use
//! shortest round-trip formatting so a reloaded model predicts identically.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{
    DecisionTree, GaussianNb, LearnError, Learner, LogisticConfig, LogisticModel, Node, Standardizer, TreeConfig,
};

const MAGIC: &str = "patchsift-model 1";

fn join(values: &[f64]) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{v}").unwrap();
    }
    s
}

pub(super) fn write_model(model: &Learner) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "kind {}", model.kind().short_name()).unwrap();
    writeln!(out, "dim {}", model.dim()).unwrap();
    match model {
        Learner::Logistic(m) => {
            writeln!(out, "l2 {}", m.config.l2).unwrap();
            writeln!(out, "learning_rate {}", m.config.learning_rate).unwrap();
            writeln!(out, "iterations {}", m.config.iterations).unwrap();
            writeln!(out, "mean {}", join(&m.standardizer.mean)).unwrap();
            writeln!(out, "scale {}", join(&m.standardizer.scale)).unwrap();
            writeln!(out, "weights {}", join(&m.weights)).unwrap();
            writeln!(out, "bias {}", m.bias).unwrap();
        }
        Learner::Tree(t) => {
            writeln!(out, "max_depth {}", t.config.max_depth).unwrap();
            writeln!(out, "min_samples_leaf {}", t.config.min_samples_leaf).unwrap();
            writeln!(out, "nodes {}", t.nodes.len()).unwrap();
            for (i, n) in t.nodes.iter().enumerate() {
                match n {
                    Node::Split {
                        feature,
                        threshold,
                        left,
                        right,
                    } => writeln!(out, "node {i} split {feature} {threshold} {left} {right}").unwrap(),
                    Node::Leaf { probability, samples } => {
                        writeln!(out, "node {i} leaf {probability} {samples}").unwrap()
                    }
                }
            }
        }
        Learner::Bayes(b) => {
            writeln!(out, "epsilon {}", b.epsilon).unwrap();
            writeln!(out, "prior {}", join(&b.priors)).unwrap();
            writeln!(out, "mean0 {}", join(&b.means[0])).unwrap();
            writeln!(out, "mean1 {}", join(&b.means[1])).unwrap();
            writeln!(out, "var0 {}", join(&b.vars[0])).unwrap();
            writeln!(out, "var1 {}", join(&b.vars[1])).unwrap();
        }
    }
    out
}

struct Fields<'a> {
    map: HashMap<&'a str, (usize, &'a str)>,
    nodes: Vec<(usize, &'a str)>,
}

fn syntax(line: usize, message: impl Into<String>) -> LearnError {
    LearnError::ModelSyntax {
        line,
        message: message.into(),
    }
}

impl<'a> Fields<'a> {
    fn get(&self, key: &str) -> Result<(usize, &'a str), LearnError> {
        self.map
            .get(key)
            .copied()
            .ok_or_else(|| syntax(0, format!("missing `{key}`")))
    }

    fn usize(&self, key: &str) -> Result<usize, LearnError> {
        let (line, v) = self.get(key)?;
        v.parse().map_err(|_| syntax(line, format!("`{key}` is not an integer")))
    }

    fn f64(&self, key: &str) -> Result<f64, LearnError> {
        let (line, v) = self.get(key)?;
        parse_f64(v, line)
    }

    fn vec(&self, key: &str, len: usize) -> Result<Vec<f64>, LearnError> {
        let (line, v) = self.get(key)?;
        let values = v
            .split(' ')
            .filter(|s| !s.is_empty())
            .map(|s| parse_f64(s, line))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != len {
            return Err(syntax(line, format!("`{key}` has {} values, expected {len}", values.len())));
        }
        Ok(values)
    }
}

fn parse_f64(s: &str, line: usize) -> Result<f64, LearnError> {
    let v: f64 = s.parse().map_err(|_| syntax(line, format!("bad number {s:?}")))?;
    if !v.is_finite() {
        return Err(syntax(line, "non-finite number"));
    }
    Ok(v)
}

pub(super) fn parse_model(text: &str) -> Result<Learner, LearnError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(syntax(1, "not a patchsift model file")),
    }
    let mut fields = Fields {
        map: HashMap::new(),
        nodes: Vec::new(),
    };
    for (no, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        if key == "node" {
            fields.nodes.push((no, rest));
        } else if fields.map.insert(key, (no, rest)).is_some() {
            return Err(syntax(no, format!("duplicate `{key}`")));
        }
    }
    let dim = fields.usize("dim")?;
    if dim == 0 {
        return Err(syntax(fields.get("dim")?.0, "dim must be positive"));
    }
    let (kind_line, kind) = fields.get("kind")?;
    match kind {
        "lr" => {
            let config = LogisticConfig {
                l2: fields.f64("l2")?,
                learning_rate: fields.f64("learning_rate")?,
                iterations: fields.usize("iterations")?,
            };
            let scale = fields.vec("scale", dim)?;
            if scale.iter().any(|&s| s <= 0.0) {
                return Err(syntax(fields.get("scale")?.0, "scale must be positive"));
            }
            Ok(Learner::Logistic(LogisticModel {
                config,
                standardizer: Standardizer {
                    mean: fields.vec("mean", dim)?,
                    scale,
                },
                weights: fields.vec("weights", dim)?,
                bias: fields.f64("bias")?,
            }))
        }
        "dt" => {
            let config = TreeConfig {
                max_depth: fields.usize("max_depth")?,
                min_samples_leaf: fields.usize("min_samples_leaf")?,
            };
            let count = fields.usize("nodes")?;
            if count != fields.nodes.len() {
                return Err(syntax(
                    fields.get("nodes")?.0,
                    format!("declares {count} nodes, found {}", fields.nodes.len()),
                ));
            }
            let mut nodes = Vec::with_capacity(count);
            for (expected, &(no, rest)) in fields.nodes.iter().enumerate() {
                let parts: Vec<&str> = rest.split(' ').collect();
                let int = |s: &str| s.parse::<usize>().map_err(|_| syntax(no, format!("bad integer {s:?}")));
                if parts.first().map(|s| int(s)).transpose()? != Some(expected) {
                    return Err(syntax(no, "nodes must be listed in index order"));
                }
                let node = match &parts[1..] {
                    ["split", f, t, l, r] => Node::Split {
                        feature: int(f)?,
                        threshold: parse_f64(t, no)?,
                        left: int(l)?,
                        right: int(r)?,
                    },
                    ["leaf", p, s] => Node::Leaf {
                        probability: parse_f64(p, no)?,
                        samples: int(s)?,
                    },
                    _ => return Err(syntax(no, "malformed node")),
                };
                nodes.push(node);
            }
            let tree = DecisionTree { config, dim, nodes };
            tree.validate().map_err(|m| syntax(0, m))?;
            Ok(Learner::Tree(tree))
        }
        "nb" => {
            let prior = fields.vec("prior", 2)?;
            if prior.iter().any(|&p| p <= 0.0 || p >= 1.0) {
                return Err(syntax(fields.get("prior")?.0, "priors must lie in (0, 1)"));
            }
            let vars = [fields.vec("var0", dim)?, fields.vec("var1", dim)?];
            if vars.iter().flatten().any(|&v| v <= 0.0) {
                return Err(syntax(fields.get("var0")?.0, "variances must be positive"));
            }
            Ok(Learner::Bayes(GaussianNb {
                priors: [prior[0], prior[1]],
                means: [fields.vec("mean0", dim)?, fields.vec("mean1", dim)?],
                vars,
                epsilon: fields.f64("epsilon")?,
            }))
        }
        other => Err(syntax(kind_line, format!("unknown model kind {other:?}"))),
    }
}

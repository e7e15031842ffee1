//! Gradient-boosted regression trees on binary log-loss.
//!
//! Trees grow leaf-wise: the leaf with the largest second-order split gain
//! is split next, until `max_leaves` is reached or no split leaves both
//! children with `min_samples_leaf` samples. Leaf values are Newton steps,
//! halved while the shrunken step would raise that leaf's loss, so the
//! training loss never goes up from one stage to the next.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MODEL_FORMAT: &str = "craftgen-gbm";
pub const MODEL_VERSION: u32 = 1;

const L2: f64 = 1.0;
const MIN_GAIN: f64 = 1e-12;
const MAX_HALVINGS: usize = 40;
const SCORE_CLAMP: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbmHyperparams {
    pub learning_rate: f64,
    pub max_leaves: usize,
    pub min_samples_leaf: usize,
    pub n_trees: usize,
}

impl Default for GbmHyperparams {
    fn default() -> Self {
        GbmHyperparams {
            learning_rate: 0.3,
            max_leaves: 85,
            min_samples_leaf: 50,
            n_trees: 100,
        }
    }
}

impl GbmHyperparams {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(Error::invalid("learning_rate", format!("{} not in (0, 1]", self.learning_rate)));
        }
        if self.max_leaves < 2 {
            return Err(Error::invalid("max_leaves", "need at least 2 leaves"));
        }
        if self.min_samples_leaf < 1 {
            return Err(Error::invalid("min_samples_leaf", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Node {
    /// Samples with `x[feature] <= threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
        samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if x[feature] <= threshold { left } else { right },
                Node::Leaf { value, .. } => return value,
            }
        }
    }

    /// `(value, training samples)` of every leaf.
    pub fn leaves(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.nodes.iter().filter_map(|n| match *n {
            Node::Leaf { value, samples } => Some((value, samples)),
            Node::Split { .. } => None,
        })
    }

    pub fn n_leaves(&self) -> usize {
        self.leaves().count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbmModel {
    pub format: String,
    pub version: u32,
    pub hyperparams: GbmHyperparams,
    pub n_features: usize,
    pub base_score: f64,
    /// Seed the model was trained under, kept for replay.
    pub seed: u64,
    pub trees: Vec<Tree>,
}

impl GbmModel {
    /// Raw additive score, before the sigmoid.
    pub fn score(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                actual: x.len(),
            });
        }
        let lr = self.hyperparams.learning_rate;
        Ok(self.base_score + self.trees.iter().map(|t| lr * t.predict(x)).sum::<f64>())
    }

    /// Probability of the positive class, strictly inside `(0, 1)`.
    pub fn predict_raw(&self, x: &[f64]) -> Result<f64> {
        Ok(sigmoid(self.score(x)?))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: GbmModel = serde_json::from_str(text)?;
        if model.format != MODEL_FORMAT || model.version != MODEL_VERSION {
            return Err(Error::Parse(format!("unsupported model {} v{}", model.format, model.version)));
        }
        model.hyperparams.validate()?;
        for tree in &model.trees {
            for node in &tree.nodes {
                if let Node::Split { feature, left, right, .. } = *node {
                    if feature >= model.n_features || left >= tree.nodes.len() || right >= tree.nodes.len() {
                        return Err(Error::Parse("malformed tree".into()));
                    }
                }
            }
        }
        Ok(model)
    }
}

pub fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z.clamp(-SCORE_CLAMP, SCORE_CLAMP)).exp())
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

fn sample_loss(score: f64, y: bool) -> f64 {
    softplus(score) - if y { score } else { 0.0 }
}

/// Mean binary log-loss of raw scores against labels.
pub fn log_loss(scores: &[f64], labels: &[bool]) -> f64 {
    scores
        .iter()
        .zip(labels)
        .map(|(&s, &y)| sample_loss(s, y))
        .sum::<f64>()
        / scores.len() as f64
}

#[derive(Debug, Clone)]
struct Candidate {
    gain: f64,
    feature: usize,
    threshold: f64,
    left: Vec<usize>,
    right: Vec<usize>,
}

struct Grower<'a> {
    x: &'a [Vec<f64>],
    grad: &'a [f64],
    hess: &'a [f64],
    min_leaf: usize,
}

impl Grower<'_> {
    fn best_split(&self, samples: &[usize]) -> Option<Candidate> {
        let n = samples.len();
        if n < 2 * self.min_leaf {
            return None;
        }
        let g_total: f64 = samples.iter().map(|&i| self.grad[i]).sum();
        let h_total: f64 = samples.iter().map(|&i| self.hess[i]).sum();
        let parent = g_total * g_total / (h_total + L2);
        let mut best: Option<(f64, usize, usize, Vec<usize>)> = None;
        let n_features = self.x[samples[0]].len();
        for f in 0..n_features {
            let mut order = samples.to_vec();
            order.sort_by(|&a, &b| self.x[a][f].total_cmp(&self.x[b][f]).then(a.cmp(&b)));
            let (mut gl, mut hl) = (0.0, 0.0);
            for pos in 1..n {
                let prev = order[pos - 1];
                gl += self.grad[prev];
                hl += self.hess[prev];
                if pos < self.min_leaf || n - pos < self.min_leaf {
                    continue;
                }
                if self.x[prev][f] >= self.x[order[pos]][f] {
                    continue;
                }
                let (gr, hr) = (g_total - gl, h_total - hl);
                let gain = gl * gl / (hl + L2) + gr * gr / (hr + L2) - parent;
                if gain > MIN_GAIN && best.as_ref().is_none_or(|b| gain > b.0) {
                    best = Some((gain, f, pos, order.clone()));
                }
            }
        }
        best.map(|(gain, feature, pos, order)| {
            let lo = self.x[order[pos - 1]][feature];
            let hi = self.x[order[pos]][feature];
            let mid = lo + (hi - lo) / 2.0;
            let threshold = if mid < hi { mid } else { lo };
            let mut left = order[..pos].to_vec();
            let mut right = order[pos..].to_vec();
            left.sort_unstable();
            right.sort_unstable();
            Candidate {
                gain,
                feature,
                threshold,
                left,
                right,
            }
        })
    }
}

/// Newton leaf value, halved until the shrunken step does not raise the
/// leaf's loss.
fn leaf_value(samples: &[usize], grad: &[f64], hess: &[f64], scores: &[f64], labels: &[bool], lr: f64) -> f64 {
    let g: f64 = samples.iter().map(|&i| grad[i]).sum();
    let h: f64 = samples.iter().map(|&i| hess[i]).sum();
    let mut value = -g / (h + L2);
    let loss_at = |delta: f64| -> f64 {
        samples
            .iter()
            .map(|&i| sample_loss(scores[i] + delta, labels[i]))
            .sum()
    };
    let before = loss_at(0.0);
    for _ in 0..MAX_HALVINGS {
        if loss_at(lr * value) <= before {
            return value;
        }
        value /= 2.0;
    }
    0.0
}

fn grow_tree(
    x: &[Vec<f64>],
    labels: &[bool],
    scores: &[f64],
    hp: &GbmHyperparams,
) -> (Tree, Vec<(Vec<usize>, usize)>) {
    let probs: Vec<f64> = scores.iter().map(|&s| sigmoid(s)).collect();
    let grad: Vec<f64> = probs
        .iter()
        .zip(labels)
        .map(|(&p, &y)| p - if y { 1.0 } else { 0.0 })
        .collect();
    let hess: Vec<f64> = probs.iter().map(|&p| (p * (1.0 - p)).max(1e-12)).collect();
    let grower = Grower {
        x,
        grad: &grad,
        hess: &hess,
        min_leaf: hp.min_samples_leaf,
    };

    // open leaves: (node index, samples, best split)
    let mut nodes = vec![Node::Leaf { value: 0.0, samples: 0 }];
    let all: Vec<usize> = (0..x.len()).collect();
    let root_split = grower.best_split(&all);
    let mut open: Vec<(usize, Vec<usize>, Option<Candidate>)> = vec![(0, all, root_split)];
    let mut n_leaves = 1;

    while n_leaves < hp.max_leaves {
        let pick = open
            .iter()
            .enumerate()
            .filter_map(|(k, (node, _, c))| c.as_ref().map(|c| (k, *node, c.gain)))
            .max_by(|a, b| a.2.total_cmp(&b.2).then(b.1.cmp(&a.1)));
        let Some((k, node, _)) = pick else { break };
        let (_, _, cand) = open.swap_remove(k);
        let cand = cand.expect("picked leaf has a split");
        let (li, ri) = (nodes.len(), nodes.len() + 1);
        nodes.push(Node::Leaf { value: 0.0, samples: 0 });
        nodes.push(Node::Leaf { value: 0.0, samples: 0 });
        nodes[node] = Node::Split {
            feature: cand.feature,
            threshold: cand.threshold,
            left: li,
            right: ri,
        };
        let left_split = grower.best_split(&cand.left);
        let right_split = grower.best_split(&cand.right);
        open.push((li, cand.left, left_split));
        open.push((ri, cand.right, right_split));
        n_leaves += 1;
    }

    let mut assignments = Vec::with_capacity(open.len());
    for (node, samples, _) in open {
        let value = leaf_value(&samples, &grad, &hess, scores, labels, hp.learning_rate);
        nodes[node] = Node::Leaf {
            value,
            samples: samples.len(),
        };
        assignments.push((samples, node));
    }
    (Tree { nodes }, assignments)
}

/// Trains on raw feature rows. Returns the model and the mean training
/// log-loss before the first tree and after each one.
pub fn fit(x: &[Vec<f64>], labels: &[bool], hp: &GbmHyperparams, seed: u64) -> Result<(GbmModel, Vec<f64>)> {
    hp.validate()?;
    if x.len() != labels.len() {
        return Err(Error::invalid("labels", "one label per row required"));
    }
    if x.len() < 2 * hp.min_samples_leaf || x.is_empty() {
        return Err(Error::invalid(
            "data",
            format!("{} rows, need at least {}", x.len(), 2 * hp.min_samples_leaf.max(1)),
        ));
    }
    let n_features = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != n_features) {
        return Err(Error::DimensionMismatch {
            expected: n_features,
            actual: row.len(),
        });
    }
    let positives = labels.iter().filter(|&&y| y).count();
    if positives == 0 || positives == labels.len() {
        return Err(Error::DegenerateLabels);
    }

    let p = positives as f64 / labels.len() as f64;
    let base_score = (p / (1.0 - p)).ln();
    let mut scores = vec![base_score; x.len()];
    let mut history = vec![log_loss(&scores, labels)];
    let mut trees = Vec::with_capacity(hp.n_trees);
    for _ in 0..hp.n_trees {
        let (tree, assignments) = grow_tree(x, labels, &scores, hp);
        for (samples, node) in assignments {
            if let Node::Leaf { value, .. } = tree.nodes[node] {
                for i in samples {
                    scores[i] += hp.learning_rate * value;
                }
            }
        }
        trees.push(tree);
        history.push(log_loss(&scores, labels));
    }

    let model = GbmModel {
        format: MODEL_FORMAT.to_string(),
        version: MODEL_VERSION,
        hyperparams: *hp,
        n_features,
        base_score,
        seed,
        trees,
    };
    Ok((model, history))
}

//! Authorship verification over concatenated style vectors with a random
//! forest of axis-aligned Gini trees.

use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{StyleProfile, FEATURE_COUNT};

pub const PAIR_DIM: usize = 2 * FEATURE_COUNT;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("profile `{doc_id}` has {len} features, expected {FEATURE_COUNT}")]
    IncompleteProfile { doc_id: String, len: usize },
    #[error("vector has a non-finite entry at {0}")]
    NonFinite(usize),
    #[error("no training examples")]
    EmptyTraining,
    #[error("training data contains only one class")]
    SingleClass,
    #[error("expected {expected} features, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("no test examples")]
    EmptyTest,
    #[error("model file: {0}")]
    Persistence(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairExample {
    pub vec_a: Vec<f64>,
    pub vec_b: Vec<f64>,
    pub label: bool,
}

fn check_vec(v: &[f64]) -> Result<(), VerifyError> {
    if v.len() != FEATURE_COUNT {
        return Err(VerifyError::DimensionMismatch { expected: FEATURE_COUNT, actual: v.len() });
    }
    match v.iter().position(|x| !x.is_finite()) {
        Some(i) => Err(VerifyError::NonFinite(i)),
        None => Ok(()),
    }
}

impl PairExample {
    pub fn new(vec_a: Vec<f64>, vec_b: Vec<f64>, label: bool) -> Result<PairExample, VerifyError> {
        check_vec(&vec_a)?;
        check_vec(&vec_b)?;
        Ok(PairExample { vec_a, vec_b, label })
    }

    pub fn from_profiles(a: &StyleProfile, b: &StyleProfile, label: bool) -> Result<PairExample, VerifyError> {
        PairExample::new(complete_vector(a)?, complete_vector(b)?, label)
    }

    pub fn features(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(PAIR_DIM);
        v.extend_from_slice(&self.vec_a);
        v.extend_from_slice(&self.vec_b);
        v
    }
}

fn complete_vector(p: &StyleProfile) -> Result<Vec<f64>, VerifyError> {
    if !p.is_complete() {
        return Err(VerifyError::IncompleteProfile { doc_id: p.doc_id.clone(), len: p.len() });
    }
    let v = p.vector();
    check_vec(&v)?;
    Ok(v)
}

/// `[a ‖ b]` in canonical feature order.
pub fn featurize_pair(a: &StyleProfile, b: &StyleProfile) -> Result<Vec<f64>, VerifyError> {
    let mut v = complete_vector(a)?;
    v.extend(complete_vector(b)?);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    /// Features tried per split; `None` means the square root of the width.
    pub max_features: Option<usize>,
    pub bootstrap: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams { n_trees: 100, max_depth: 16, min_leaf: 2, max_features: None, bootstrap: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Node {
    Split { feature: usize, threshold: f64, left: usize, right: usize },
    Leaf { prob: f64 },
}

/// Nodes in preorder; node 0 is the root and children always follow their
/// parent, so the tree is acyclic by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    /// Probability of the positive class at the leaf reached by `x`.
    /// Values `<= threshold` go left.
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Leaf { prob } => return prob,
                Node::Split { feature, threshold, left, right } => {
                    i = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn go(t: &Tree, i: usize) -> usize {
            match t.nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(t, left).max(go(t, right)),
            }
        }
        go(self, 0)
    }
}

pub const MODEL_FORMAT: &str = "biberkit-forest";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub format: String,
    pub version: u32,
    pub n_features: usize,
    pub params: ForestParams,
    pub seed: u64,
    pub trees: Vec<Tree>,
}

fn gini(pos: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = pos as f64 / n as f64;
    2.0 * p * (1.0 - p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub feature: usize,
    pub threshold: f64,
    /// Weighted child impurity, `n_left·gini_left + n_right·gini_right`.
    pub cost: f64,
}

/// Best Gini split of `idx` over `features`. Thresholds are midpoints
/// between consecutive distinct values; both sides need `min_leaf` rows.
/// Equal-cost candidates are ranked by the rows they send left (smallest
/// sorted row list wins), which does not depend on feature numbering.
pub fn best_split(x: &[Vec<f64>], y: &[bool], idx: &[usize], features: &[usize], min_leaf: usize) -> Option<Split> {
    let n = idx.len();
    let total_pos = idx.iter().filter(|&&i| y[i]).count();
    let parent = n as f64 * gini(total_pos, n);
    let mut best: Option<(Split, Vec<usize>)> = None;
    let mut order = idx.to_vec();
    for &f in features {
        order.sort_by(|&a, &b| x[a][f].total_cmp(&x[b][f]).then(a.cmp(&b)));
        let mut left_pos = 0;
        for k in 1..n {
            if y[order[k - 1]] {
                left_pos += 1;
            }
            let (lo, hi) = (x[order[k - 1]][f], x[order[k]][f]);
            if lo == hi || k < min_leaf || n - k < min_leaf {
                continue;
            }
            let cost = k as f64 * gini(left_pos, k) + (n - k) as f64 * gini(total_pos - left_pos, n - k);
            if cost >= parent - 1e-12 {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, _)) if cost < b.cost - 1e-12 => true,
                Some((b, _)) if cost <= b.cost + 1e-12 => true,
                _ => false,
            };
            if !better {
                continue;
            }
            let mut left = order[..k].to_vec();
            left.sort_unstable();
            if let Some((b, bl)) = &best {
                if cost > b.cost - 1e-12 && left >= *bl {
                    continue;
                }
            }
            let mut threshold = lo + (hi - lo) / 2.0;
            if threshold >= hi {
                threshold = lo;
            }
            best = Some((Split { feature: f, threshold, cost }, left));
        }
    }
    best.map(|(s, _)| s)
}

struct Grower<'a> {
    x: &'a [Vec<f64>],
    y: &'a [bool],
    params: ForestParams,
    n_try: usize,
    nodes: Vec<Node>,
}

impl Grower<'_> {
    fn grow(&mut self, idx: &[usize], depth: usize, rng: &mut ChaCha8Rng) -> usize {
        let id = self.nodes.len();
        let pos = idx.iter().filter(|&&i| self.y[i]).count();
        self.nodes.push(Node::Leaf { prob: pos as f64 / idx.len() as f64 });
        if depth >= self.params.max_depth || pos == 0 || pos == idx.len() || idx.len() < 2 * self.params.min_leaf {
            return id;
        }
        let width = self.x[0].len();
        let features: Vec<usize> = if self.n_try >= width {
            (0..width).collect()
        } else {
            sample(rng, width, self.n_try).into_vec()
        };
        let Some(s) = best_split(self.x, self.y, idx, &features, self.params.min_leaf.max(1)) else {
            return id;
        };
        let (l, r): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| self.x[i][s.feature] <= s.threshold);
        let left = self.grow(&l, depth + 1, rng);
        let right = self.grow(&r, depth + 1, rng);
        self.nodes[id] = Node::Split { feature: s.feature, threshold: s.threshold, left, right };
        id
    }
}

impl ForestModel {
    /// Fit on arbitrary-width rows. Each tree draws its own seed from one
    /// generator seeded with `seed`, in tree order.
    pub fn fit(x: &[Vec<f64>], y: &[bool], params: ForestParams, seed: u64) -> Result<ForestModel, VerifyError> {
        if x.is_empty() {
            return Err(VerifyError::EmptyTraining);
        }
        assert_eq!(x.len(), y.len());
        let width = x[0].len();
        if let Some(r) = x.iter().find(|r| r.len() != width) {
            return Err(VerifyError::DimensionMismatch { expected: width, actual: r.len() });
        }
        if y.iter().all(|&v| v) || y.iter().all(|&v| !v) {
            return Err(VerifyError::SingleClass);
        }
        let n_try = params
            .max_features
            .unwrap_or_else(|| (width as f64).sqrt().round() as usize)
            .clamp(1, width.max(1));
        let mut master = ChaCha8Rng::seed_from_u64(seed);
        let seeds: Vec<u64> = (0..params.n_trees).map(|_| master.next_u64()).collect();
        let trees = seeds
            .into_iter()
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let idx: Vec<usize> = if params.bootstrap {
                    (0..x.len()).map(|_| rng.random_range(0..x.len())).collect()
                } else {
                    (0..x.len()).collect()
                };
                let mut g = Grower { x, y, params, n_try, nodes: Vec::new() };
                g.grow(&idx, 0, &mut rng);
                Tree { nodes: g.nodes }
            })
            .collect();
        Ok(ForestModel {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            n_features: width,
            params,
            seed,
            trees,
        })
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64, VerifyError> {
        if x.len() != self.n_features {
            return Err(VerifyError::DimensionMismatch { expected: self.n_features, actual: x.len() });
        }
        if self.trees.is_empty() {
            return Ok(0.0);
        }
        let sum: f64 = self.trees.iter().map(|t| t.predict(x)).sum();
        Ok((sum / self.trees.len() as f64).clamp(0.0, 1.0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<ForestModel, VerifyError> {
        let m: ForestModel = serde_json::from_str(text).map_err(|e| VerifyError::Persistence(e.to_string()))?;
        if m.format != MODEL_FORMAT {
            return Err(VerifyError::Persistence(format!("unknown format `{}`", m.format)));
        }
        if m.version != MODEL_VERSION {
            return Err(VerifyError::Persistence(format!("unsupported version {}", m.version)));
        }
        for t in &m.trees {
            for (i, n) in t.nodes.iter().enumerate() {
                if let Node::Split { feature, left, right, .. } = *n {
                    if feature >= m.n_features || left <= i || right <= i || left >= t.nodes.len() || right >= t.nodes.len() {
                        return Err(VerifyError::Persistence(format!("malformed node {i}")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<(), VerifyError> {
        std::fs::write(path, self.to_json()).map_err(|e| VerifyError::Persistence(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ForestModel, VerifyError> {
        let text = std::fs::read_to_string(path).map_err(|e| VerifyError::Persistence(e.to_string()))?;
        ForestModel::from_json(&text)
    }
}

pub fn train(examples: &[PairExample], params: ForestParams, seed: u64) -> Result<ForestModel, VerifyError> {
    let x: Vec<Vec<f64>> = examples.iter().map(PairExample::features).collect();
    let y: Vec<bool> = examples.iter().map(|e| e.label).collect();
    ForestModel::fit(&x, &y, params, seed)
}

pub fn predict(model: &ForestModel, pair: &[f64]) -> Result<f64, VerifyError> {
    model.predict(pair)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub f1: f64,
    pub precision: f64,
    pub recall: f64,
    pub accuracy: f64,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl Metrics {
    /// Precision, recall and F1 are 0 when their denominators are 0.
    pub fn from_predictions(truth: &[bool], predicted: &[bool]) -> Metrics {
        let mut m = Metrics { f1: 0.0, precision: 0.0, recall: 0.0, accuracy: 0.0, tp: 0, fp: 0, tn: 0, fn_: 0 };
        for (&t, &p) in truth.iter().zip(predicted) {
            match (t, p) {
                (true, true) => m.tp += 1,
                (false, true) => m.fp += 1,
                (false, false) => m.tn += 1,
                (true, false) => m.fn_ += 1,
            }
        }
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        m.precision = ratio(m.tp, m.tp + m.fp);
        m.recall = ratio(m.tp, m.tp + m.fn_);
        m.f1 = ratio(2 * m.tp, 2 * m.tp + m.fp + m.fn_);
        m.accuracy = ratio(m.tp + m.tn, truth.len());
        m
    }
}

pub fn evaluate(model: &ForestModel, test: &[PairExample], threshold: f64) -> Result<Metrics, VerifyError> {
    if test.is_empty() {
        return Err(VerifyError::EmptyTest);
    }
    let mut predicted = Vec::with_capacity(test.len());
    for e in test {
        predicted.push(model.predict(&e.features())? >= threshold);
    }
    let truth: Vec<bool> = test.iter().map(|e| e.label).collect();
    Ok(Metrics::from_predictions(&truth, &predicted))
}

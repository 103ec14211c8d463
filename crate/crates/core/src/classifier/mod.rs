//! Multinomial logistic regression fitted with L-BFGS.
//!
//! Parameters are flattened as the `C × d` weight matrix (row-major) followed
//! by the `C` biases. The objective is the mean softmax cross-entropy plus
//! `(λ/2)‖W‖²_F`; biases are not penalized. Training starts from zero.

mod eval;
pub mod lbfgs;

use std::path::Path;

use rayon::prelude::*;

pub use eval::{evaluate, group_map, EvalReport, Group, GroupAccuracy, GroupThresholds};
pub use lbfgs::{LbfgsOptions, LbfgsReport};

use crate::balance::BalancedSet;
use crate::dataset::{read_model, write_model, EmbeddingDataset, ModelPayload};
use crate::directional::{check_same_dim, UnitEmbedding};
use crate::error::{Error, Result};

/// Rows per partial-gradient block; fixed so the reduction order never
/// depends on the thread count.
const MIN_BLOCK_ROWS: usize = 1024;
const MAX_BLOCKS: usize = 64;

/// Borrowed view of labelled rows for training.
#[derive(Debug, Clone, Copy)]
pub struct Samples<'a> {
    pub dim: usize,
    pub num_classes: usize,
    pub labels: &'a [u32],
    pub features: &'a [f32],
}

impl<'a> From<&'a BalancedSet> for Samples<'a> {
    fn from(set: &'a BalancedSet) -> Self {
        Samples {
            dim: set.dim(),
            num_classes: set.num_classes(),
            labels: set.labels(),
            features: set.data(),
        }
    }
}

impl<'a> From<&'a EmbeddingDataset> for Samples<'a> {
    fn from(ds: &'a EmbeddingDataset) -> Self {
        Samples {
            dim: ds.dim(),
            num_classes: ds.num_classes(),
            labels: ds.labels(),
            features: ds.data(),
        }
    }
}

impl Samples<'_> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Empty("training samples"));
        }
        if self.features.len() != self.labels.len() * self.dim {
            return Err(Error::InvalidArgument("feature matrix shape mismatch".into()));
        }
        if let Some(&label) = self.labels.iter().find(|&&l| l as usize >= self.num_classes) {
            return Err(Error::LabelOutOfRange {
                label,
                num_classes: self.num_classes,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    /// Penalty `λ`; `None` means `1 / N_total`.
    pub l2_strength: Option<f64>,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub history_size: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            l2_strength: None,
            max_iterations: 1000,
            gradient_tolerance: 1e-6,
            history_size: 10,
        }
    }
}

impl TrainConfig {
    pub fn resolved_l2(&self, n_total: usize) -> f64 {
        self.l2_strength.unwrap_or(1.0 / n_total.max(1) as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearClassifier {
    dim: usize,
    num_classes: usize,
    weights: Vec<f64>,
    biases: Vec<f64>,
}

impl LinearClassifier {
    pub fn new(dim: usize, num_classes: usize, weights: Vec<f64>, biases: Vec<f64>) -> Result<Self> {
        if num_classes < 2 {
            return Err(Error::InvalidArgument(format!(
                "a classifier needs at least 2 classes, got {num_classes}"
            )));
        }
        if weights.len() != dim * num_classes || biases.len() != num_classes {
            return Err(Error::InvalidArgument("classifier parameter shape mismatch".into()));
        }
        if weights.iter().chain(&biases).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("classifier parameters must be finite".into()));
        }
        Ok(Self {
            dim,
            num_classes,
            weights,
            biases,
        })
    }

    pub fn from_flat(dim: usize, num_classes: usize, params: &[f64]) -> Result<Self> {
        let split = dim * num_classes;
        if params.len() != split + num_classes {
            return Err(Error::InvalidArgument("flat parameter length mismatch".into()));
        }
        Self::new(dim, num_classes, params[..split].to_vec(), params[split..].to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    /// `W x + b`.
    pub fn scores(&self, x: &[f64]) -> Vec<f64> {
        self.weights
            .chunks_exact(self.dim)
            .zip(&self.biases)
            .map(|(w, b)| w.iter().zip(x).map(|(a, c)| a * c).sum::<f64>() + b)
            .collect()
    }

    /// Highest-scoring class for a raw row; ties go to the lowest index.
    pub fn predict_slice(&self, x: &[f64]) -> u32 {
        argmax(&self.scores(x))
    }

    pub fn predict_row(&self, row: &[f32]) -> u32 {
        let x: Vec<f64> = row.iter().map(|&v| v as f64).collect();
        self.predict_slice(&x)
    }

    pub fn to_payload(&self) -> ModelPayload {
        ModelPayload {
            dim: self.dim,
            num_classes: self.num_classes,
            weights: self.weights.iter().map(|&v| v as f32).collect(),
            biases: self.biases.iter().map(|&v| v as f32).collect(),
        }
    }

    pub fn from_payload(p: &ModelPayload) -> Result<Self> {
        Self::new(
            p.dim,
            p.num_classes,
            p.weights.iter().map(|&v| v as f64).collect(),
            p.biases.iter().map(|&v| v as f64).collect(),
        )
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_model(&self.to_payload(), path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_payload(&read_model(path)?)
    }
}

fn argmax(scores: &[f64]) -> u32 {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best as u32
}

/// Class for `x`, ties to the lowest index.
pub fn predict(model: &LinearClassifier, x: &UnitEmbedding) -> Result<u32> {
    check_same_dim(model.dim, x.dim())?;
    Ok(model.predict_slice(x.as_slice()))
}

/// Mean cross-entropy plus `(λ/2)‖W‖²_F` and its analytic gradient.
pub fn loss_and_grad(params: &[f64], data: &Samples<'_>, l2_strength: f64) -> Result<(f64, Vec<f64>)> {
    data.validate()?;
    let (d, c) = (data.dim, data.num_classes);
    let n_weights = c * d;
    if params.len() != n_weights + c {
        return Err(Error::InvalidArgument(format!(
            "expected {} parameters, got {}",
            n_weights + c,
            params.len()
        )));
    }
    let (weights, biases) = params.split_at(n_weights);
    let n = data.len();
    let block = MIN_BLOCK_ROWS.max(n.div_ceil(MAX_BLOCKS));

    let partials: Vec<(f64, Vec<f64>)> = data
        .labels
        .par_chunks(block)
        .zip(data.features.par_chunks(block * d))
        .map(|(labels, rows)| {
            let mut loss = 0.0;
            let mut grad = vec![0.0; n_weights + c];
            let mut scores = vec![0.0; c];
            let mut x = vec![0.0; d];
            for (&y, row) in labels.iter().zip(rows.chunks_exact(d)) {
                x.iter_mut().zip(row).for_each(|(a, &b)| *a = b as f64);
                for (k, s) in scores.iter_mut().enumerate() {
                    let w = &weights[k * d..(k + 1) * d];
                    *s = w.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() + biases[k];
                }
                let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let z: f64 = scores.iter().map(|s| (s - max).exp()).sum();
                let lse = max + z.ln();
                loss += lse - scores[y as usize];
                for (k, &s) in scores.iter().enumerate() {
                    let mut r = (s - lse).exp();
                    if k == y as usize {
                        r -= 1.0;
                    }
                    grad[k * d..(k + 1) * d]
                        .iter_mut()
                        .zip(&x)
                        .for_each(|(g, xi)| *g += r * xi);
                    grad[n_weights + k] += r;
                }
            }
            (loss, grad)
        })
        .collect();

    let inv_n = 1.0 / n as f64;
    let mut loss = 0.0;
    let mut grad = vec![0.0; n_weights + c];
    for (l, g) in partials {
        loss += l;
        grad.iter_mut().zip(g).for_each(|(a, b)| *a += b);
    }
    loss *= inv_n;
    grad.iter_mut().for_each(|g| *g *= inv_n);
    let sq: f64 = weights.iter().map(|w| w * w).sum();
    loss += 0.5 * l2_strength * sq;
    grad[..n_weights]
        .iter_mut()
        .zip(weights)
        .for_each(|(g, w)| *g += l2_strength * w);
    Ok((loss, grad))
}

/// Fits the classifier and returns the optimizer report alongside it.
pub fn train_logreg_detailed(
    data: &Samples<'_>,
    cfg: &TrainConfig,
) -> Result<(LinearClassifier, LbfgsReport)> {
    data.validate()?;
    let mut seen = vec![false; data.num_classes];
    data.labels.iter().for_each(|&l| seen[l as usize] = true);
    if data.num_classes < 2 || seen.iter().filter(|&&s| s).count() < 2 {
        return Err(Error::InvalidArgument("training needs at least 2 classes present".into()));
    }
    let lambda = cfg.resolved_l2(data.len());
    if !(lambda >= 0.0) {
        return Err(Error::InvalidArgument(format!("l2 strength must be >= 0, got {lambda}")));
    }
    let opts = LbfgsOptions {
        history_size: cfg.history_size,
        max_iterations: cfg.max_iterations,
        gradient_tolerance: cfg.gradient_tolerance,
    };
    let n_params = data.num_classes * (data.dim + 1);
    let report = lbfgs::minimize(|p| loss_and_grad(p, data, lambda), vec![0.0; n_params], &opts)?;
    let model = LinearClassifier::from_flat(data.dim, data.num_classes, &report.x)?;
    Ok((model, report))
}

pub fn train_logreg(data: &BalancedSet, cfg: &TrainConfig) -> Result<LinearClassifier> {
    Ok(train_logreg_detailed(&Samples::from(data), cfg)?.0)
}

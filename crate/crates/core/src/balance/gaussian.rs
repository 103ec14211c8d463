//! Ambient-space Gaussian KDE baseline with Scott's-rule bandwidth.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{synthesize, BalancedSet, Method};
use crate::dataset::{class_counts, EmbeddingDataset};
use crate::error::Result;
use crate::rng::RngHandle;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianKdeOptions {
    /// Project draws back onto the unit sphere.
    pub renormalize: bool,
}

impl Default for GaussianKdeOptions {
    fn default() -> Self {
        Self { renormalize: true }
    }
}

/// Mean per-coordinate sample standard deviation of `rows`, plus the
/// per-coordinate sum of squared deviations.
fn spread(dataset: &EmbeddingDataset, rows: &[usize]) -> (f64, Vec<f64>) {
    let d = dataset.dim();
    let n = rows.len() as f64;
    let mut mean = vec![0.0; d];
    for &i in rows {
        mean.iter_mut().zip(dataset.row(i)).for_each(|(m, &v)| *m += v as f64 / n);
    }
    let mut ss = vec![0.0; d];
    for &i in rows {
        ss.iter_mut()
            .zip(dataset.row(i))
            .zip(&mean)
            .for_each(|((s, &v), m)| *s += (v as f64 - m).powi(2));
    }
    let sigma = if rows.len() < 2 {
        0.0
    } else {
        ss.iter().map(|s| (s / (n - 1.0)).sqrt()).sum::<f64>() / d as f64
    };
    (sigma, ss)
}

/// Pooled within-class σ̄ over every class with at least two rows.
fn pooled_sigma(dataset: &EmbeddingDataset) -> f64 {
    let d = dataset.dim();
    let mut ss = vec![0.0; d];
    let mut dof = 0usize;
    for (&class, &n) in &class_counts(dataset) {
        if n >= 2 {
            let (_, class_ss) = spread(dataset, &dataset.rows_of_class(class));
            ss.iter_mut().zip(class_ss).for_each(|(a, b)| *a += b);
            dof += n - 1;
        }
    }
    if dof == 0 {
        return 0.0;
    }
    ss.iter().map(|s| (s / dof as f64).sqrt()).sum::<f64>() / d as f64
}

/// Scott's rule `h = σ̄ · N^(−1/(d+4))`.
pub fn class_bandwidth(sigma_bar: f64, n: usize, dim: usize) -> f64 {
    sigma_bar * (n as f64).powf(-1.0 / (dim as f64 + 4.0))
}

pub fn balance_gaussian_kde(
    dataset: &EmbeddingDataset,
    options: &GaussianKdeOptions,
    rng: &mut RngHandle,
) -> Result<BalancedSet> {
    let pooled = pooled_sigma(dataset);
    let d = dataset.dim();
    synthesize(dataset, Method::GaussianKde, rng, |_, rows, deficit, rng| {
        let sigma = if rows.len() < 2 {
            pooled
        } else {
            spread(dataset, rows).0
        };
        let h = class_bandwidth(sigma, rows.len(), d);
        let mut out = Vec::with_capacity(deficit * d);
        let mut v = vec![0.0f64; d];
        for _ in 0..deficit {
            let base = dataset.row(rows[rng.random_range(0..rows.len())]);
            for (x, &b) in v.iter_mut().zip(base) {
                let noise: f64 = rng.sample(StandardNormal);
                *x = b as f64 + h * noise;
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if options.renormalize && norm > 0.0 {
                out.extend(v.iter().map(|x| (x / norm) as f32));
            } else if options.renormalize {
                out.extend_from_slice(base);
            } else {
                out.extend(v.iter().map(|&x| x as f32));
            }
        }
        Ok(out)
    })
}

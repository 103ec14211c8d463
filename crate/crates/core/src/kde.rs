//! Class-conditional vMF kernel density estimation.
//!
//! `p̂_k(z) = (1/N_k) Σ_i vMF(z; z_i, κ_i)`: one kernel per observed embedding,
//! uniform weights, and a per-kernel concentration `κ_i` obtained by applying
//! the closed-form Banerjee estimate to the pair formed by `z_i` and its
//! nearest same-class neighbour.

use rand::Rng;
use rayon::prelude::*;

use crate::directional::{
    check_same_dim, estimate_kappa_banerjee, l2_norm, UnitEmbedding, VmfParams, WoodSampler,
};
use crate::error::{Error, Result};
use crate::rng::RngHandle;

/// Largest pair resultant length fed to the concentration estimate.
pub const MAX_PAIR_RESULTANT: f64 = 1.0 - 1e-9;

/// Class size above which neighbour search runs on the rayon pool.
const PARALLEL_NEIGHBOURS: usize = 256;

/// One kernel of a [`ClassKde`].
pub type VmfComponent = VmfParams;

#[derive(Debug, Clone)]
pub struct ClassKde {
    class_id: u32,
    dim: usize,
    components: Vec<VmfComponent>,
    samplers: Vec<WoodSampler>,
}

impl ClassKde {
    /// Assembles a KDE from explicit components.
    pub fn from_components(class_id: u32, components: Vec<VmfComponent>) -> Result<Self> {
        let dim = components.first().ok_or(Error::Empty("kde components"))?.dim();
        for c in &components {
            check_same_dim(dim, c.dim())?;
        }
        let samplers = components
            .iter()
            .map(|c| WoodSampler::new(dim, c.kappa()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            class_id,
            dim,
            components,
            samplers,
        })
    }

    pub fn class_id(&self) -> u32 {
        self.class_id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[VmfComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Index of the most cosine-similar other point; ties go to the lowest index.
pub fn nearest_same_class(index: usize, class_embeddings: &[UnitEmbedding]) -> Result<usize> {
    if class_embeddings.len() < 2 {
        return Err(Error::NoNeighbor);
    }
    let query = class_embeddings.get(index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "index {index} out of range for {} embeddings",
            class_embeddings.len()
        ))
    })?;
    let mut best = None;
    let mut best_sim = f64::NEG_INFINITY;
    for (j, z) in class_embeddings.iter().enumerate() {
        if j == index {
            continue;
        }
        check_same_dim(query.dim(), z.dim())?;
        let sim = query.dot(z);
        if best.is_none() || sim > best_sim {
            best = Some(j);
            best_sim = sim;
        }
    }
    Ok(best.expect("at least one other point"))
}

/// Concentration of the two-point set `{z_i, z_j}`.
pub fn estimate_local_kappa(z_i: &UnitEmbedding, z_j: &UnitEmbedding, dim: usize) -> f64 {
    let mid: Vec<f64> = z_i
        .as_slice()
        .iter()
        .zip(z_j.as_slice())
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let r = l2_norm(&mid).min(MAX_PAIR_RESULTANT);
    estimate_kappa_banerjee(r, dim)
}

/// Local concentration at every point of a class with at least two points.
pub fn local_kappas(class_embeddings: &[UnitEmbedding]) -> Result<Vec<f64>> {
    let n = class_embeddings.len();
    if n < 2 {
        return Err(Error::NoNeighbor);
    }
    let dim = class_embeddings[0].dim();
    let one = |i: usize| -> Result<f64> {
        let j = nearest_same_class(i, class_embeddings)?;
        Ok(estimate_local_kappa(&class_embeddings[i], &class_embeddings[j], dim))
    };
    if n >= PARALLEL_NEIGHBOURS {
        (0..n).into_par_iter().map(one).collect()
    } else {
        (0..n).map(one).collect()
    }
}

/// Builds `p̂_k`; a singleton class gets one kernel with `fallback_kappa`.
pub fn build_class_kde(
    class_id: u32,
    class_embeddings: &[UnitEmbedding],
    fallback_kappa: f64,
) -> Result<ClassKde> {
    if class_embeddings.is_empty() {
        return Err(Error::Empty("class embeddings"));
    }
    let kappas = if class_embeddings.len() == 1 {
        vec![fallback_kappa]
    } else {
        local_kappas(class_embeddings)?
    };
    let components = class_embeddings
        .iter()
        .zip(kappas)
        .map(|(z, k)| VmfParams::new(z.clone(), k))
        .collect::<Result<Vec<_>>>()?;
    ClassKde::from_components(class_id, components)
}

/// `ln p̂_k(x)` via log-sum-exp over the kernels.
pub fn kde_log_density(kde: &ClassKde, x: &UnitEmbedding) -> Result<f64> {
    check_same_dim(kde.dim, x.dim())?;
    let logs: Vec<f64> = kde
        .components
        .iter()
        .map(|c| c.log_norm() + c.kappa() * c.mu().dot(x))
        .collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return Ok(max);
    }
    let sum: f64 = logs.iter().map(|l| (l - max).exp()).sum();
    Ok(max + sum.ln() - (logs.len() as f64).ln())
}

/// `n` draws from `p̂_k`: a uniformly chosen kernel, then an exact vMF draw.
pub fn sample_kde(kde: &ClassKde, n: usize, rng: &mut RngHandle) -> Result<Vec<UnitEmbedding>> {
    let k = kde.components.len();
    (0..n)
        .map(|_| {
            let i = rng.random_range(0..k);
            kde.samplers[i].sample_around(kde.components[i].mu(), rng)
        })
        .collect()
}

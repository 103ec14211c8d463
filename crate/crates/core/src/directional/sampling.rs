//! Exact vMF sampling (Wood's rejection scheme) and the Householder map that
//! carries samples from the canonical pole `e₁` to an arbitrary mean.

use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use super::{check_same_dim, dot, l2_norm, UnitEmbedding, VmfParams};
use crate::error::{Error, Result};
use crate::rng::RngHandle;

/// Per-draw iteration cap of the rejection loop.
pub const MAX_REJECTIONS: usize = 1_000_000;

/// Precomputed envelope for Wood's rejection sampler at fixed `(d, κ)`.
///
/// All quantities are carried as `ω = 1 − w`, where `w` is the cosine to the
/// pole, so that `κ` up to `KAPPA_MAX` does not cancel catastrophically.
#[derive(Debug, Clone)]
pub struct WoodSampler {
    dim: usize,
    kappa: f64,
    b: f64,
    /// `1 − x0`, with `x0 = (1 − b)/(1 + b)`
    one_minus_x0: f64,
    /// `ln(1 − x0²)`
    log_one_minus_x0_sq: f64,
    beta: Beta<f64>,
}

impl WoodSampler {
    pub fn new(dim: usize, kappa: f64) -> Result<Self> {
        super::check_dim(dim)?;
        if !(kappa >= 0.0) {
            return Err(Error::Domain(format!("concentration must be >= 0, got {kappa}")));
        }
        let m = (dim - 1) as f64;
        // (−2κ + sqrt(4κ² + m²)) / m, rationalized
        let b = m / (2.0 * kappa + (4.0 * kappa * kappa + m * m).sqrt());
        let half = m / 2.0;
        let beta = Beta::new(half, half).map_err(|e| Error::Domain(e.to_string()))?;
        Ok(Self {
            dim,
            kappa,
            b,
            one_minus_x0: 2.0 * b / (1.0 + b),
            log_one_minus_x0_sq: (4.0 * b).ln() - 2.0 * b.ln_1p(),
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Draws the cosine to the pole, returned as `(w, 1 − w²)`.
    fn draw_cosine(&self, rng: &mut RngHandle) -> Result<(f64, f64)> {
        let m = (self.dim - 1) as f64;
        let b = self.b;
        for _ in 0..MAX_REJECTIONS {
            let z = self.beta.sample(rng);
            let den = 1.0 - (1.0 - b) * z;
            let omega = 2.0 * b * z / den;
            let one_plus_w = 2.0 * (1.0 - z) / den;
            let one_minus_x0w = (2.0 * b + (1.0 - b) * omega) / (1.0 + b);
            // κ(w − x0) + m [ln(1 − x0 w) − ln(1 − x0²)]
            let t = self.kappa * (self.one_minus_x0 - omega)
                + m * (one_minus_x0w.ln() - self.log_one_minus_x0_sq);
            let u: f64 = 1.0 - rng.random::<f64>();
            if t >= u.ln() {
                let w = 1.0 - omega;
                return Ok((w, (omega * one_plus_w).max(0.0)));
            }
        }
        Err(Error::SamplerStalled(MAX_REJECTIONS))
    }

    /// One draw around the canonical pole `e₁`, written into `out`.
    pub fn sample_canonical(&self, rng: &mut RngHandle, out: &mut [f64]) -> Result<()> {
        debug_assert_eq!(out.len(), self.dim);
        let (w, sin_sq) = self.draw_cosine(rng)?;
        fill_unit_normal(rng, &mut out[1..]);
        let s = sin_sq.sqrt();
        out[1..].iter_mut().for_each(|c| *c *= s);
        out[0] = w;
        Ok(())
    }

    /// One draw around `mu`.
    pub fn sample_around(&self, mu: &UnitEmbedding, rng: &mut RngHandle) -> Result<UnitEmbedding> {
        check_same_dim(self.dim, mu.dim())?;
        let mut v = vec![0.0; self.dim];
        self.sample_canonical(rng, &mut v)?;
        householder_in_place(&mut v, mu.as_slice());
        Ok(UnitEmbedding::from_vec_unchecked(v))
    }
}

/// Fills `out` with a uniformly random unit vector (Gaussian direction).
fn fill_unit_normal(rng: &mut RngHandle, out: &mut [f64]) {
    loop {
        out.iter_mut().for_each(|c| *c = StandardNormal.sample(rng));
        let norm = l2_norm(out);
        if norm > 0.0 {
            out.iter_mut().for_each(|c| *c /= norm);
            return;
        }
    }
}

/// `n` exact draws from `vMF(μ, κ)`; `κ = 0` gives uniform draws.
pub fn sample_vmf(params: &VmfParams, n: usize, rng: &mut RngHandle) -> Result<Vec<UnitEmbedding>> {
    let sampler = WoodSampler::new(params.dim(), params.kappa())?;
    (0..n).map(|_| sampler.sample_around(params.mu(), rng)).collect()
}

/// `n` uniform draws on `S^{dim-1}`.
pub fn sample_uniform_sphere(dim: usize, n: usize, rng: &mut RngHandle) -> Result<Vec<UnitEmbedding>> {
    super::check_dim(dim)?;
    Ok((0..n)
        .map(|_| {
            let mut v = vec![0.0; dim];
            fill_unit_normal(rng, &mut v);
            UnitEmbedding::from_vec_unchecked(v)
        })
        .collect())
}

/// Applies the Householder reflection `H = I − 2uuᵀ/uᵀu`, `u = e₁ − μ`,
/// which maps `e₁` to `μ`. `H` is the identity when `μ = e₁`.
pub fn rotate_from_pole(v: &UnitEmbedding, mu: &UnitEmbedding) -> Result<UnitEmbedding> {
    check_same_dim(mu.dim(), v.dim())?;
    let mut out = v.as_slice().to_vec();
    householder_in_place(&mut out, mu.as_slice());
    Ok(UnitEmbedding::from_vec_unchecked(out))
}

pub(crate) fn householder_in_place(v: &mut [f64], mu: &[f64]) {
    let u0 = 1.0 - mu[0];
    let tail_sq = dot(&mu[1..], &mu[1..]);
    let uu = u0 * u0 + tail_sq;
    if uu < 1e-300 {
        return;
    }
    // uᵀv with u = (1 − μ₀, −μ₁, …)
    let uv = u0 * v[0] - dot(&mu[1..], &v[1..]);
    let scale = 2.0 * uv / uu;
    v[0] -= scale * u0;
    v[1..].iter_mut().zip(&mu[1..]).for_each(|(c, m)| *c += scale * m);
}

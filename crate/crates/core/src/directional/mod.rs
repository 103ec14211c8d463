//! Von Mises-Fisher primitives on the unit hypersphere `S^{d-1}`.
//!
//! The density is `f(x; μ, κ) = C_d(κ) exp(κ μᵀx)` with
//! `C_d(κ) = κ^{d/2-1} / ((2π)^{d/2} I_{d/2-1}(κ))`. At `κ = 0` the
//! distribution is uniform on the sphere, for both the density and the sampler.

mod bessel;
mod sampling;

use std::f64::consts::PI;

pub use bessel::log_bessel_i;
pub use sampling::{rotate_from_pole, sample_uniform_sphere, sample_vmf, WoodSampler};

use crate::error::{Error, Result};

/// Upper clamp on every concentration handled by the crate.
pub const KAPPA_MAX: f64 = 1e8;

/// Allowed deviation of a [`UnitEmbedding`] norm from one.
pub const UNIT_NORM_TOL: f64 = 1e-6;

/// A point on `S^{d-1}`, `d >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitEmbedding(Vec<f64>);

impl UnitEmbedding {
    /// Wraps coordinates that are already unit norm (within [`UNIT_NORM_TOL`]).
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_dim(coords.len())?;
        let norm = l2_norm(&coords);
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotUnitNorm { norm });
        }
        Ok(Self(coords))
    }

    /// Divides `coords` by its Euclidean norm.
    pub fn normalize(mut coords: Vec<f64>) -> Result<Self> {
        check_dim(coords.len())?;
        let norm = l2_norm(&coords);
        if !norm.is_finite() {
            return Err(Error::Domain("non-finite coordinates".into()));
        }
        if norm == 0.0 {
            return Err(Error::ZeroVector { row: 0 });
        }
        coords.iter_mut().for_each(|c| *c /= norm);
        Ok(Self(coords))
    }

    /// Widens an `f32` row and renormalizes it in double precision.
    pub fn from_f32(row: &[f32]) -> Result<Self> {
        Self::normalize(row.iter().map(|&v| v as f64).collect())
    }

    /// The `i`-th canonical basis vector of `R^dim`.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        check_dim(dim)?;
        if i >= dim {
            return Err(Error::InvalidArgument(format!("axis {i} out of range for dim {dim}")));
        }
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Ok(Self(v))
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!((l2_norm(&coords) - 1.0).abs() <= UNIT_NORM_TOL);
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn to_f32(&self) -> Vec<f32> {
        self.0.iter().map(|&v| v as f32).collect()
    }

    pub fn dot(&self, other: &UnitEmbedding) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.0)
    }
}

impl AsRef<[f64]> for UnitEmbedding {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Mean direction and concentration of a vMF distribution.
///
/// Concentrations above [`KAPPA_MAX`] are clamped on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct VmfParams {
    mu: UnitEmbedding,
    kappa: f64,
    log_norm: f64,
}

impl VmfParams {
    pub fn new(mu: UnitEmbedding, kappa: f64) -> Result<Self> {
        if !(kappa >= 0.0) {
            return Err(Error::Domain(format!("concentration must be >= 0, got {kappa}")));
        }
        let kappa = kappa.min(KAPPA_MAX);
        let log_norm = log_norm_const(mu.dim(), kappa);
        Ok(Self { mu, kappa, log_norm })
    }

    pub fn mu(&self) -> &UnitEmbedding {
        &self.mu
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }

    /// Cached `ln C_d(κ)`.
    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }
}

/// `ln C_d(κ)`; at `κ = 0` the log of the uniform density `Γ(d/2) / (2 π^{d/2})`.
///
/// # Panics
/// If `dim < 2` or `kappa` is negative or NaN.
pub fn log_norm_const(dim: usize, kappa: f64) -> f64 {
    assert!(dim >= 2, "dimension must be >= 2");
    assert!(kappa >= 0.0, "concentration must be >= 0");
    let half_d = dim as f64 / 2.0;
    let order = half_d - 1.0;
    if bessel::uses_series(order, kappa) {
        // κ^ν / I_ν(κ) = 2^ν Γ(ν+1) / S(κ); avoids ln κ cancelling against ln(κ/2)
        order * 2f64.ln() + libm::lgamma(order + 1.0)
            - half_d * (2.0 * PI).ln()
            - bessel::log_series_sum(order, kappa)
    } else {
        let log_i = log_bessel_i(order, kappa).expect("arguments validated above");
        order * kappa.ln() - half_d * (2.0 * PI).ln() - log_i
    }
}

/// Log-density of `x` under `vMF(μ, κ)`.
pub fn vmf_log_pdf(x: &UnitEmbedding, params: &VmfParams) -> Result<f64> {
    check_same_dim(params.dim(), x.dim())?;
    Ok(params.log_norm + params.kappa * params.mu.dot(x))
}

/// `‖(1/N) Σ z_i‖₂`, clamped to `[0, 1]`.
pub fn mean_resultant_length(samples: &[UnitEmbedding]) -> Result<f64> {
    let first = samples.first().ok_or(Error::Empty("mean_resultant_length samples"))?;
    let dim = first.dim();
    let mut sum = vec![0.0; dim];
    for s in samples {
        check_same_dim(dim, s.dim())?;
        sum.iter_mut().zip(s.as_slice()).for_each(|(a, b)| *a += b);
    }
    Ok((l2_norm(&sum) / samples.len() as f64).min(1.0))
}

/// Closed-form concentration estimate `R̄(d − R̄²)/(1 − R̄²)`, clamped to `[0, KAPPA_MAX]`.
///
/// `r_bar >= 1` maps to [`KAPPA_MAX`].
pub fn estimate_kappa_banerjee(r_bar: f64, dim: usize) -> f64 {
    let d = dim as f64;
    let r = r_bar.max(0.0);
    if r >= 1.0 {
        return KAPPA_MAX;
    }
    let r2 = r * r;
    let kappa = r * (d - r2) / (1.0 - r2);
    kappa.clamp(0.0, KAPPA_MAX)
}

/// Expected cosine `E[μᵀx] = A_d(κ) = I_{d/2}(κ) / I_{d/2-1}(κ)` under `vMF(μ, κ)`.
pub fn mean_cosine_expectation(dim: usize, kappa: f64) -> Result<f64> {
    check_dim(dim)?;
    if !(kappa >= 0.0) {
        return Err(Error::Domain(format!("concentration must be >= 0, got {kappa}")));
    }
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let half_d = dim as f64 / 2.0;
    Ok((log_bessel_i(half_d, kappa)? - log_bessel_i(half_d - 1.0, kappa)?).exp())
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    Ok(())
}

pub(crate) fn check_same_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn l2_norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

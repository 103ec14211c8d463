//! Class balancing by synthetic oversampling.
//!
//! Every synthesizing method tops up class `k` with `N_max − N_k` new rows, so
//! the output has exactly `N_max` rows per class present in the input. The
//! real rows come first, bitwise unchanged and in their original order,
//! followed by the synthetic rows grouped by ascending class id.
//!
//! Classes are generated independently. Each call draws one word from the
//! caller's [`RngHandle`] to seed a base handle, and class `k` samples from
//! `base.split(k)`, so results do not depend on the degree of parallelism.

mod gaussian;
mod smote;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use rayon::prelude::*;

pub use gaussian::{balance_gaussian_kde, class_bandwidth, GaussianKdeOptions};
pub use smote::{balance_smote, smote_interpolate, DEFAULT_SMOTE_K};

use crate::dataset::{class_counts, EmbeddingDataset};
use crate::directional::UnitEmbedding;
use crate::error::{Error, Result};
use crate::kde::{build_class_kde, local_kappas, sample_kde};
use crate::rng::RngHandle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    None,
    RandomOversample,
    Smote,
    GaussianKde,
    VmfKde,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::None,
        Method::RandomOversample,
        Method::Smote,
        Method::GaussianKde,
        Method::VmfKde,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::None => "none",
            Method::RandomOversample => "ros",
            Method::Smote => "smote",
            Method::GaussianKde => "gauss-kde",
            Method::VmfKde => "vmf-kde",
        }
    }

    pub fn is_stochastic(self) -> bool {
        self != Method::None
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown method {s:?}; expected one of none, ros, smote, gauss-kde, vmf-kde"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Real,
    Synthetic,
}

/// Per-class deficits `Ñ_k = N_max − N_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancePlan {
    pub targets: BTreeMap<u32, usize>,
    pub max_count: usize,
}

impl BalancePlan {
    pub fn total_synthetic(&self) -> usize {
        self.targets.values().sum()
    }
}

pub fn compute_targets(class_counts: &BTreeMap<u32, usize>) -> Result<BalancePlan> {
    let max_count = *class_counts
        .values()
        .max()
        .ok_or(Error::Empty("class counts"))?;
    if let Some((&class, _)) = class_counts.iter().find(|(_, &n)| n == 0) {
        return Err(Error::InvalidArgument(format!("class {class} has zero samples")));
    }
    let targets = class_counts
        .iter()
        .map(|(&k, &n)| (k, max_count - n))
        .collect();
    Ok(BalancePlan { targets, max_count })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalancedSet {
    dim: usize,
    num_classes: usize,
    labels: Vec<u32>,
    data: Vec<f32>,
    provenance: Vec<Provenance>,
    method: Method,
}

impl BalancedSet {
    /// Wraps explicit rows; mostly useful for tests and custom pipelines.
    pub fn from_parts(
        dim: usize,
        num_classes: usize,
        labels: Vec<u32>,
        data: Vec<f32>,
        provenance: Vec<Provenance>,
        method: Method,
    ) -> Result<Self> {
        if data.len() != labels.len() * dim || provenance.len() != labels.len() {
            return Err(Error::InvalidArgument("inconsistent balanced-set lengths".into()));
        }
        if let Some(&label) = labels.iter().find(|&&l| l as usize >= num_classes) {
            return Err(Error::LabelOutOfRange { label, num_classes });
        }
        Ok(Self {
            dim,
            num_classes,
            labels,
            data,
            provenance,
            method,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn class_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &l in &self.labels {
            *counts.entry(l).or_insert(0) += 1;
        }
        counts
    }

    pub fn synthetic_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts: BTreeMap<u32, usize> = self.labels.iter().map(|&l| (l, 0)).collect();
        for (&l, p) in self.labels.iter().zip(&self.provenance) {
            if *p == Provenance::Synthetic {
                *counts.get_mut(&l).unwrap() += 1;
            }
        }
        counts
    }

    fn filtered(&self, keep: impl Fn(Provenance) -> bool) -> EmbeddingDataset {
        let mut labels = Vec::new();
        let mut data = Vec::new();
        for (i, &p) in self.provenance.iter().enumerate() {
            if keep(p) {
                labels.push(self.labels[i]);
                data.extend_from_slice(self.row(i));
            }
        }
        EmbeddingDataset::from_parts_unchecked(self.dim, self.num_classes, labels, data)
    }

    /// The real rows, in input order.
    pub fn real_rows(&self) -> EmbeddingDataset {
        self.filtered(|p| p == Provenance::Real)
    }

    /// All rows as a plain dataset (provenance dropped).
    pub fn to_dataset(&self) -> EmbeddingDataset {
        self.filtered(|_| true)
    }
}

/// Knobs of the baseline methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceOptions {
    pub smote_k: usize,
    pub gaussian: GaussianKdeOptions,
}

impl Default for BalanceOptions {
    fn default() -> Self {
        Self {
            smote_k: DEFAULT_SMOTE_K,
            gaussian: GaussianKdeOptions::default(),
        }
    }
}

/// Dispatches on `method`.
pub fn balance(
    dataset: &EmbeddingDataset,
    method: Method,
    options: &BalanceOptions,
    rng: &mut RngHandle,
) -> Result<BalancedSet> {
    match method {
        Method::None => balance_none(dataset),
        Method::RandomOversample => balance_random_oversample(dataset, rng),
        Method::Smote => balance_smote(dataset, options.smote_k, rng),
        Method::GaussianKde => balance_gaussian_kde(dataset, &options.gaussian, rng),
        Method::VmfKde => balance_vmf_kde(dataset, rng),
    }
}

pub fn balance_none(dataset: &EmbeddingDataset) -> Result<BalancedSet> {
    Ok(BalancedSet {
        dim: dataset.dim(),
        num_classes: dataset.num_classes(),
        labels: dataset.labels().to_vec(),
        data: dataset.data().to_vec(),
        provenance: vec![Provenance::Real; dataset.len()],
        method: Method::None,
    })
}

/// Runs `generate(class, rows, deficit, rng)` for every class with a deficit
/// and appends the results after the real rows.
pub(crate) fn synthesize<F>(
    dataset: &EmbeddingDataset,
    method: Method,
    rng: &mut RngHandle,
    generate: F,
) -> Result<BalancedSet>
where
    F: Fn(u32, &[usize], usize, &mut RngHandle) -> Result<Vec<f32>> + Sync,
{
    let plan = compute_targets(&class_counts(dataset))?;
    let base = RngHandle::new(rng.next_u64(), 0);
    let jobs: Vec<(u32, usize)> = plan
        .targets
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(&k, &n)| (k, n))
        .collect();
    let generated = jobs
        .par_iter()
        .map(|&(class, deficit)| {
            let rows = dataset.rows_of_class(class);
            let mut class_rng = base.split(class as u64);
            let out = generate(class, &rows, deficit, &mut class_rng)?;
            debug_assert_eq!(out.len(), deficit * dataset.dim());
            Ok((class, deficit, out))
        })
        .collect::<Result<Vec<_>>>()?;

    let total = dataset.len() + plan.total_synthetic();
    let mut labels = Vec::with_capacity(total);
    let mut data = Vec::with_capacity(total * dataset.dim());
    let mut provenance = Vec::with_capacity(total);
    labels.extend_from_slice(dataset.labels());
    data.extend_from_slice(dataset.data());
    provenance.resize(dataset.len(), Provenance::Real);
    for (class, deficit, rows) in generated {
        labels.extend(std::iter::repeat_n(class, deficit));
        data.extend(rows);
        provenance.extend(std::iter::repeat_n(Provenance::Synthetic, deficit));
    }
    Ok(BalancedSet {
        dim: dataset.dim(),
        num_classes: dataset.num_classes(),
        labels,
        data,
        provenance,
        method,
    })
}

/// Duplicates uniformly chosen real rows of each deficit class.
pub fn balance_random_oversample(
    dataset: &EmbeddingDataset,
    rng: &mut RngHandle,
) -> Result<BalancedSet> {
    synthesize(dataset, Method::RandomOversample, rng, |_, rows, deficit, rng| {
        let mut out = Vec::with_capacity(deficit * dataset.dim());
        for _ in 0..deficit {
            let pick = rows[rng.random_range(0..rows.len())];
            out.extend_from_slice(dataset.row(pick));
        }
        Ok(out)
    })
}

/// Median local concentration over all classes with at least two rows;
/// the kernel concentration used for singleton classes.
pub fn fallback_kappa(dataset: &EmbeddingDataset) -> Result<Option<f64>> {
    let mut all = Vec::new();
    for (&class, &n) in &class_counts(dataset) {
        if n >= 2 {
            all.extend(local_kappas(&dataset.class_embeddings(class)?)?);
        }
    }
    if all.is_empty() {
        return Ok(None);
    }
    all.sort_by(f64::total_cmp);
    let m = all.len() / 2;
    Ok(Some(if all.len() % 2 == 1 {
        all[m]
    } else {
        0.5 * (all[m - 1] + all[m])
    }))
}

/// Draws each deficit from the class's vMF kernel density estimate.
pub fn balance_vmf_kde(dataset: &EmbeddingDataset, rng: &mut RngHandle) -> Result<BalancedSet> {
    let plan = compute_targets(&class_counts(dataset))?;
    let counts = class_counts(dataset);
    let needs_fallback = plan.targets.iter().any(|(k, &n)| n > 0 && counts[k] == 1);
    let fallback = if needs_fallback {
        fallback_kappa(dataset)?.ok_or(Error::NoNeighbor)?
    } else {
        // unused: no singleton class receives synthetic rows
        0.0
    };
    synthesize(dataset, Method::VmfKde, rng, |class, rows, deficit, rng| {
        let embeddings: Vec<UnitEmbedding> = rows
            .iter()
            .map(|&i| dataset.embedding(i))
            .collect::<Result<_>>()?;
        let kde = build_class_kde(class, &embeddings, fallback)?;
        let draws = sample_kde(&kde, deficit, rng)?;
        Ok(draws.iter().flat_map(|z| z.to_f32()).collect())
    })
}

//! Labelled embedding collections, normalization, and long-tail subsets.

mod format;

use std::collections::BTreeMap;

use rand::seq::index;

pub use format::{
    class_names_path, decode_embeddings, decode_model, encode_embeddings, encode_model,
    read_embeddings, read_model, write_embeddings, write_model, FormatError, ModelPayload, Role,
    HEADER_LEN, MAGIC, VERSION,
};

use crate::directional::{check_dim, UnitEmbedding};
use crate::error::{Error, Result};
use crate::rng::RngHandle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Split {
    Train,
    Test,
    #[default]
    Unspecified,
}

/// `N` labelled rows of dimension `d`, stored as a row-major `f32` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingDataset {
    dim: usize,
    num_classes: usize,
    labels: Vec<u32>,
    data: Vec<f32>,
    class_names: Option<BTreeMap<u32, String>>,
    split: Split,
}

impl EmbeddingDataset {
    pub fn new(dim: usize, num_classes: usize, labels: Vec<u32>, data: Vec<f32>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != labels.len() * dim {
            return Err(Error::InvalidArgument(format!(
                "{} values cannot form {} rows of dimension {dim}",
                data.len(),
                labels.len()
            )));
        }
        if let Some(&label) = labels.iter().find(|&&l| l as usize >= num_classes) {
            return Err(Error::LabelOutOfRange { label, num_classes });
        }
        Ok(Self::from_parts_unchecked(dim, num_classes, labels, data))
    }

    pub(crate) fn from_parts_unchecked(
        dim: usize,
        num_classes: usize,
        labels: Vec<u32>,
        data: Vec<f32>,
    ) -> Self {
        Self {
            dim,
            num_classes,
            labels,
            data,
            class_names: None,
            split: Split::Unspecified,
        }
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

    pub fn rows(&self) -> impl Iterator<Item = &[f32]> {
        self.data.chunks_exact(self.dim)
    }

    /// Row `i` widened to `f64` and renormalized.
    pub fn embedding(&self, i: usize) -> Result<UnitEmbedding> {
        UnitEmbedding::from_f32(self.row(i)).map_err(|e| match e {
            Error::ZeroVector { .. } => Error::ZeroVector { row: i },
            other => other,
        })
    }

    /// Row indices carrying `class`, in file order.
    pub fn rows_of_class(&self, class: u32) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == class)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn class_embeddings(&self, class: u32) -> Result<Vec<UnitEmbedding>> {
        self.rows_of_class(class)
            .into_iter()
            .map(|i| self.embedding(i))
            .collect()
    }

    pub fn class_names(&self) -> Option<&BTreeMap<u32, String>> {
        self.class_names.as_ref()
    }

    pub fn set_class_names(&mut self, names: Option<BTreeMap<u32, String>>) {
        self.class_names = names;
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn set_split(&mut self, split: Split) {
        self.split = split;
    }

    pub fn with_split(mut self, split: Split) -> Self {
        self.split = split;
        self
    }

    /// Keeps the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> EmbeddingDataset {
        let mut labels = Vec::with_capacity(rows.len());
        let mut data = Vec::with_capacity(rows.len() * self.dim);
        for &i in rows {
            labels.push(self.labels[i]);
            data.extend_from_slice(self.row(i));
        }
        EmbeddingDataset {
            dim: self.dim,
            num_classes: self.num_classes,
            labels,
            data,
            class_names: self.class_names.clone(),
            split: self.split,
        }
    }
}

/// Rows whose norm is already this close to one are left bitwise untouched,
/// which makes [`normalize_all`] exactly idempotent on `f32` data.
const NORMALIZED_SLACK: f64 = 1e-7;

/// Divides every row by its Euclidean norm.
pub fn normalize_all(dataset: &EmbeddingDataset) -> Result<EmbeddingDataset> {
    let mut out = dataset.clone();
    let dim = dataset.dim;
    for (i, row) in out.data.chunks_exact_mut(dim).enumerate() {
        let norm = row.iter().map(|&v| (v as f64) * (v as f64)).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector { row: i });
        }
        if !norm.is_finite() {
            return Err(Error::Domain(format!("row {i} has non-finite entries")));
        }
        if (norm - 1.0).abs() > NORMALIZED_SLACK {
            row.iter_mut().for_each(|v| *v = (*v as f64 / norm) as f32);
        }
    }
    Ok(out)
}

/// Exact label histogram; classes with no rows are absent.
pub fn class_counts(dataset: &EmbeddingDataset) -> BTreeMap<u32, usize> {
    let mut counts = BTreeMap::new();
    for &l in &dataset.labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProfileKind {
    #[default]
    Exponential,
}

/// Per-class sizes `N_k = max(1, round(N_max · IR^(−k/(C−1))))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongTailProfile {
    pub imbalance_ratio: f64,
    pub kind: ProfileKind,
    pub max_count: usize,
}

impl LongTailProfile {
    pub fn exponential(imbalance_ratio: f64, max_count: usize) -> Result<Self> {
        if !(imbalance_ratio >= 1.0) || !imbalance_ratio.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "imbalance ratio must be >= 1, got {imbalance_ratio}"
            )));
        }
        if max_count == 0 {
            return Err(Error::InvalidArgument("max count must be >= 1".into()));
        }
        Ok(Self {
            imbalance_ratio,
            kind: ProfileKind::Exponential,
            max_count,
        })
    }

    /// Target size of each of `num_classes` classes, head first.
    pub fn counts(&self, num_classes: usize) -> Result<Vec<usize>> {
        if num_classes < 2 {
            return Err(Error::InvalidArgument(format!(
                "a long-tail profile needs at least 2 classes, got {num_classes}"
            )));
        }
        let last = (num_classes - 1) as f64;
        Ok((0..num_classes)
            .map(|k| {
                let n = self.max_count as f64 * self.imbalance_ratio.powf(-(k as f64) / last);
                (n.round() as usize).max(1)
            })
            .collect())
    }
}

/// Subsamples each class `k` to the profile size, uniformly without replacement.
///
/// Kept rows stay in their original relative order.
pub fn make_longtail_subset(
    balanced: &EmbeddingDataset,
    profile: &LongTailProfile,
    rng: &mut RngHandle,
) -> Result<EmbeddingDataset> {
    let targets = profile.counts(balanced.num_classes)?;
    let mut keep = Vec::new();
    for (class, &target) in targets.iter().enumerate() {
        let rows = balanced.rows_of_class(class as u32);
        if rows.len() < target {
            return Err(Error::InsufficientSamples {
                class: class as u32,
                available: rows.len(),
                required: target,
            });
        }
        let mut picked = index::sample(rng, rows.len(), target).into_vec();
        picked.sort_unstable();
        keep.extend(picked.into_iter().map(|p| rows[p]));
    }
    keep.sort_unstable();
    Ok(balanced.select_rows(&keep))
}

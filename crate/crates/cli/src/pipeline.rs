//! Steps shared by the single-stage commands and the grid, so a grid cell
//! reproduces the matching hand-run `subsample → balance → train → eval`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use vmfkde::balance::{balance, BalanceOptions, BalancedSet, Method};
use vmfkde::classifier::{evaluate, group_map, EvalReport, GroupThresholds, LinearClassifier};
use vmfkde::dataset::{
    class_counts, make_longtail_subset, normalize_all, read_embeddings, EmbeddingDataset,
    LongTailProfile,
};
use vmfkde::RngHandle;

/// Stream used for drawing the long-tailed subset.
const SUBSAMPLE_STREAM: u64 = 0;

/// Bad flags or inputs the user can fix; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Reads an embedding file and re-applies unit normalization.
pub fn load(path: &Path) -> Result<EmbeddingDataset> {
    let raw = read_embeddings(path).with_context(|| format!("reading {}", path.display()))?;
    let names = raw.class_names().cloned();
    let mut ds = normalize_all(&raw).with_context(|| format!("normalizing {}", path.display()))?;
    ds.set_class_names(names);
    Ok(ds)
}

/// Keeps classes `0..classes`, relabelling nothing.
pub fn restrict_classes(ds: &EmbeddingDataset, classes: usize) -> Result<EmbeddingDataset> {
    if classes > ds.num_classes() {
        return Err(usage(format!(
            "--classes {classes} exceeds the {} classes in the input",
            ds.num_classes()
        )));
    }
    let rows: Vec<usize> = (0..ds.len())
        .filter(|&i| (ds.labels()[i] as usize) < classes)
        .collect();
    let kept = ds.select_rows(&rows);
    let mut out = EmbeddingDataset::new(kept.dim(), classes, kept.labels().to_vec(), kept.data().to_vec())?;
    out.set_class_names(
        ds.class_names()
            .map(|names| names.range(..classes as u32).map(|(&k, v)| (k, v.clone())).collect()),
    );
    Ok(out)
}

/// Smallest per-class count, counting absent classes as zero.
pub fn min_class_count(ds: &EmbeddingDataset) -> usize {
    let counts = class_counts(ds);
    (0..ds.num_classes() as u32)
        .map(|k| counts.get(&k).copied().unwrap_or(0))
        .min()
        .unwrap_or(0)
}

pub fn subsample(ds: &EmbeddingDataset, ir: f64, nmax: Option<usize>, seed: u64) -> Result<EmbeddingDataset> {
    let nmax = match nmax {
        Some(n) => n,
        None => match min_class_count(ds) {
            0 => return Err(usage("some class has no rows; pass --nmax or --classes")),
            n => n,
        },
    };
    let profile = LongTailProfile::exponential(ir, nmax)?;
    let mut rng = RngHandle::new(seed, SUBSAMPLE_STREAM);
    let mut out = make_longtail_subset(ds, &profile, &mut rng)?;
    out.set_class_names(ds.class_names().cloned());
    Ok(out)
}

/// Each method draws from its own stream so methods never share randomness.
pub fn balance_stream(method: Method) -> u64 {
    1 + Method::ALL.iter().position(|&m| m == method).unwrap() as u64
}

pub fn balance_seeded(ds: &EmbeddingDataset, method: Method, seed: u64, smote_k: usize) -> Result<BalancedSet> {
    let options = BalanceOptions {
        smote_k,
        ..BalanceOptions::default()
    };
    let mut rng = RngHandle::new(seed, balance_stream(method));
    Ok(balance(ds, method, &options, &mut rng)?)
}

pub fn score(
    model: &LinearClassifier,
    test: &EmbeddingDataset,
    train_counts: &BTreeMap<u32, usize>,
    thresholds: &GroupThresholds,
) -> Result<EvalReport> {
    if model.num_classes() < test.num_classes() {
        return Err(usage(format!(
            "model has {} classes but the test file declares {}",
            model.num_classes(),
            test.num_classes()
        )));
    }
    Ok(evaluate(model, test, &group_map(train_counts, thresholds))?)
}

/// Exit code for a failed command: 2 for usage and input problems, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    use vmfkde::Error as E;
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::Io { .. }
                | E::Json { .. }
                | E::Format(_)
                | E::DimensionMismatch { .. }
                | E::LabelOutOfRange { .. }
                | E::InvalidArgument(_)
                | E::InsufficientSamples { .. }
                | E::ZeroVector { .. }
                | E::DimensionTooSmall(_)
                | E::NotUnitNorm { .. }
                | E::Empty(_) => 2,
                _ => 1,
            };
        }
        if cause.is::<std::io::Error>() || cause.is::<csv::Error>() {
            return 2;
        }
    }
    1
}

//! Top-1 accuracy reports, overall, per class and per frequency group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LinearClassifier;
use crate::dataset::EmbeddingDataset;
use crate::directional::check_same_dim;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Head,
    Medium,
    Tail,
    Ungrouped,
}

/// Training-count cut points: head if `n > head_above`, tail if
/// `n < tail_below`, medium otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupThresholds {
    pub head_above: usize,
    pub tail_below: usize,
}

impl Default for GroupThresholds {
    fn default() -> Self {
        Self {
            head_above: 100,
            tail_below: 20,
        }
    }
}

impl GroupThresholds {
    pub fn classify(&self, train_count: usize) -> Group {
        if train_count > self.head_above {
            Group::Head
        } else if train_count < self.tail_below {
            Group::Tail
        } else {
            Group::Medium
        }
    }
}

pub fn group_map(
    train_counts: &BTreeMap<u32, usize>,
    thresholds: &GroupThresholds,
) -> BTreeMap<u32, Group> {
    train_counts
        .iter()
        .map(|(&k, &n)| (k, thresholds.classify(n)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAccuracy {
    /// `None` when the group has no test samples.
    pub accuracy: Option<f64>,
    pub correct: u64,
    pub total: u64,
    pub classes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub overall: f64,
    /// Indexed by class id; `None` for classes without test samples.
    pub per_class: Vec<Option<f64>>,
    pub groups: BTreeMap<Group, GroupAccuracy>,
    /// `confusion[true][predicted]`.
    pub confusion: Vec<Vec<u64>>,
}

impl EvalReport {
    pub fn group_accuracy(&self, group: Group) -> Option<f64> {
        self.groups.get(&group).and_then(|g| g.accuracy)
    }
}

/// Scores every test row; classes missing from `groups` are `Ungrouped`.
pub fn evaluate(
    model: &LinearClassifier,
    test: &EmbeddingDataset,
    groups: &BTreeMap<u32, Group>,
) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::Empty("test set"));
    }
    check_same_dim(model.dim(), test.dim())?;
    let c = model.num_classes();
    if let Some(&label) = test.labels().iter().find(|&&l| l as usize >= c) {
        return Err(Error::LabelOutOfRange { label, num_classes: c });
    }
    let mut confusion = vec![vec![0u64; c]; c];
    for (&y, row) in test.labels().iter().zip(test.rows()) {
        confusion[y as usize][model.predict_row(row) as usize] += 1;
    }

    let mut correct_total = 0u64;
    let mut per_class = Vec::with_capacity(c);
    let mut group_stats: BTreeMap<Group, GroupAccuracy> = BTreeMap::new();
    for (k, row) in confusion.iter().enumerate() {
        let total: u64 = row.iter().sum();
        let correct = row[k];
        correct_total += correct;
        per_class.push((total > 0).then(|| correct as f64 / total as f64));
        if total == 0 {
            continue;
        }
        let group = groups.get(&(k as u32)).copied().unwrap_or(Group::Ungrouped);
        let entry = group_stats.entry(group).or_insert(GroupAccuracy {
            accuracy: None,
            correct: 0,
            total: 0,
            classes: 0,
        });
        entry.correct += correct;
        entry.total += total;
        entry.classes += 1;
    }
    for g in group_stats.values_mut() {
        g.accuracy = Some(g.correct as f64 / g.total as f64);
    }
    for g in [Group::Head, Group::Medium, Group::Tail] {
        group_stats.entry(g).or_insert(GroupAccuracy {
            accuracy: None,
            correct: 0,
            total: 0,
            classes: 0,
        });
    }

    Ok(EvalReport {
        overall: correct_total as f64 / test.len() as f64,
        per_class,
        groups: group_stats,
        confusion,
    })
}

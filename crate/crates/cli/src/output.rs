use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use vmfkde::classifier::{EvalReport, Group, GroupAccuracy, GroupThresholds, TrainConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const GIT_DESCRIBE: &str = env!("VMFKDE_GIT_DESCRIBE");

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// `<stem>.<suffix>` next to `path`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

pub fn thresholds_flag(t: &GroupThresholds) -> String {
    format!("{},{}", t.head_above, t.tail_below)
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
    pub git_describe: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Self {
            name: "vmfkde",
            version: VERSION,
            git_describe: GIT_DESCRIBE,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TrainSettings {
    pub l2: Option<f64>,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub history_size: usize,
}

impl From<&TrainConfig> for TrainSettings {
    fn from(c: &TrainConfig) -> Self {
        Self {
            l2: c.l2_strength,
            max_iterations: c.max_iterations,
            gradient_tolerance: c.gradient_tolerance,
            history_size: c.history_size,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BalanceManifest {
    pub command: &'static str,
    pub tool: Tool,
    pub input: PathBuf,
    pub output: PathBuf,
    pub provenance: PathBuf,
    pub method: String,
    pub seed: Option<u64>,
    pub smote_k: usize,
    pub dim: usize,
    pub num_classes: usize,
    pub input_class_counts: BTreeMap<u32, usize>,
    pub class_counts: BTreeMap<u32, usize>,
    pub synthetic_counts: BTreeMap<u32, usize>,
    pub wall_time_seconds: BTreeMap<&'static str, f64>,
}

/// Row ranges of the balanced file: real rows first, then synthetic ones.
#[derive(Debug, Serialize)]
pub struct ProvenanceSidecar {
    pub method: String,
    pub rows: usize,
    pub real: [usize; 2],
    pub synthetic: [usize; 2],
}

#[derive(Debug, Serialize)]
pub struct EvalConfigEcho {
    pub model: PathBuf,
    pub test: PathBuf,
    pub train: PathBuf,
    pub group_thresholds: String,
    pub head_above: usize,
    pub tail_below: usize,
}

/// Evaluation report; the layout is described by `docs/report.schema.json`.
#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub overall: f64,
    pub head: Option<f64>,
    pub medium: Option<f64>,
    pub tail: Option<f64>,
    pub per_class: Vec<Option<f64>>,
    pub groups: BTreeMap<Group, GroupAccuracy>,
    pub confusion: Vec<Vec<u64>>,
    pub config: EvalConfigEcho,
    pub tool: Tool,
    pub wall_time_seconds: f64,
}

impl ReportJson {
    pub fn new(report: EvalReport, config: EvalConfigEcho, wall_time_seconds: f64) -> Self {
        Self {
            overall: report.overall,
            head: report.group_accuracy(Group::Head),
            medium: report.group_accuracy(Group::Medium),
            tail: report.group_accuracy(Group::Tail),
            per_class: report.per_class,
            groups: report.groups,
            confusion: report.confusion,
            config,
            tool: Tool::current(),
            wall_time_seconds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GridRow {
    pub method: String,
    pub ir: f64,
    pub seed: u64,
    pub overall: Option<f64>,
    pub head: Option<f64>,
    pub medium: Option<f64>,
    pub tail: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct GridCell {
    pub method: String,
    pub ir: f64,
    pub seed: u64,
    pub status: &'static str,
    pub error: Option<String>,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct GridManifest {
    pub command: &'static str,
    pub tool: Tool,
    pub train: PathBuf,
    pub test: PathBuf,
    pub irs: Vec<f64>,
    pub seeds: Vec<u64>,
    pub methods: Vec<String>,
    pub nmax: Option<usize>,
    pub group_thresholds: String,
    pub smote_k: usize,
    pub train_config: TrainSettings,
    pub csv: PathBuf,
    pub rows: usize,
    pub failed: usize,
    pub cells: Vec<GridCell>,
    pub wall_time_seconds: f64,
}

use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use vmfkde::balance::Method;
use vmfkde::classifier::{GroupThresholds, TrainConfig};

/// Long-tail rebalancing of embedding datasets with von Mises-Fisher KDE.
///
/// Every flag can also be set through an environment variable named
/// `VMFKDE_<FLAG>`, e.g. `VMFKDE_SEED=7`.
#[derive(Debug, Parser)]
#[command(name = "vmfkde", version, about, long_about = None)]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "VMFKDE_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cut a balanced embedding file down to an exponential long-tail profile.
    Subsample(SubsampleArgs),
    /// Top every class up to the head-class count.
    Balance(BalanceArgs),
    /// Fit a multinomial logistic-regression head.
    Train(TrainArgs),
    /// Score a model on a test file and write a JSON report.
    Eval(EvalArgs),
    /// Run the method x imbalance-ratio x seed grid and write a CSV.
    Grid(GridArgs),
}

pub fn method_parser() -> impl TypedValueParser<Value = Method> {
    PossibleValuesParser::new(Method::ALL.map(Method::tag))
        .map(|s| s.parse::<Method>().expect("restricted to known tags"))
}

#[derive(Debug, Args)]
pub struct SubsampleArgs {
    /// Source embedding file with at least `--nmax` rows per class.
    #[arg(long, env = "VMFKDE_INPUT")]
    pub input: PathBuf,

    /// Destination for the long-tailed file.
    #[arg(long, env = "VMFKDE_OUTPUT")]
    pub output: PathBuf,

    /// Imbalance ratio between the first and last class.
    #[arg(long, env = "VMFKDE_IR")]
    pub ir: f64,

    /// Head-class size; defaults to the smallest class count of the input.
    #[arg(long, env = "VMFKDE_NMAX")]
    pub nmax: Option<usize>,

    /// Keep only classes `0..CLASSES` of the input.
    #[arg(long, env = "VMFKDE_CLASSES")]
    pub classes: Option<usize>,

    #[arg(long, env = "VMFKDE_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BalanceArgs {
    #[arg(long, env = "VMFKDE_INPUT")]
    pub input: PathBuf,

    #[arg(long, env = "VMFKDE_OUTPUT")]
    pub output: PathBuf,

    #[arg(long, env = "VMFKDE_METHOD", value_parser = method_parser())]
    pub method: Method,

    /// Required by every method except `none`.
    #[arg(long, env = "VMFKDE_SEED")]
    pub seed: Option<u64>,

    /// Neighbour count for SMOTE.
    #[arg(long, env = "VMFKDE_SMOTE_K", default_value_t = vmfkde::balance::DEFAULT_SMOTE_K)]
    pub smote_k: usize,

    /// Run manifest path; defaults to `<output stem>.manifest.json`.
    #[arg(long, env = "VMFKDE_MANIFEST")]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TrainOptions {
    /// L2 penalty on the weights; defaults to 1 / number of training rows.
    #[arg(long, env = "VMFKDE_L2")]
    pub l2: Option<f64>,

    #[arg(long, env = "VMFKDE_MAX_ITER", default_value_t = TrainConfig::default().max_iterations)]
    pub max_iter: usize,

    /// Stop once the largest gradient entry falls below this.
    #[arg(long, env = "VMFKDE_TOL", default_value_t = TrainConfig::default().gradient_tolerance)]
    pub tol: f64,

    /// L-BFGS memory length.
    #[arg(long, env = "VMFKDE_HISTORY", default_value_t = TrainConfig::default().history_size)]
    pub history: usize,
}

impl TrainOptions {
    pub fn config(&self) -> TrainConfig {
        TrainConfig {
            l2_strength: self.l2,
            max_iterations: self.max_iter,
            gradient_tolerance: self.tol,
            history_size: self.history,
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, env = "VMFKDE_INPUT")]
    pub input: PathBuf,

    /// Destination model file.
    #[arg(long, env = "VMFKDE_OUTPUT")]
    pub output: PathBuf,

    #[command(flatten)]
    pub train: TrainOptions,
}

pub fn parse_thresholds(s: &str) -> Result<GroupThresholds, String> {
    let (head, tail) = s
        .split_once(',')
        .ok_or_else(|| format!("expected HEAD,TAIL such as 100,20, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let thresholds = GroupThresholds {
        head_above: parse(head)?,
        tail_below: parse(tail)?,
    };
    if thresholds.tail_below > thresholds.head_above + 1 {
        return Err(format!("tail bound {} exceeds head bound {}", thresholds.tail_below, thresholds.head_above));
    }
    Ok(thresholds)
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, env = "VMFKDE_MODEL")]
    pub model: PathBuf,

    #[arg(long, env = "VMFKDE_TEST")]
    pub test: PathBuf,

    /// Long-tailed training file whose class counts define the groups.
    #[arg(long, env = "VMFKDE_TRAIN")]
    pub train: PathBuf,

    /// Group cut points: head above the first count, tail below the second.
    #[arg(long, env = "VMFKDE_GROUP_THRESHOLDS", default_value = "100,20", value_parser = parse_thresholds)]
    pub group_thresholds: GroupThresholds,

    /// Report destination.
    #[arg(long, env = "VMFKDE_OUTPUT")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Balanced source of the long-tailed training splits.
    #[arg(long, env = "VMFKDE_TRAIN")]
    pub train: PathBuf,

    #[arg(long, env = "VMFKDE_TEST")]
    pub test: PathBuf,

    /// Comma-separated imbalance ratios.
    #[arg(long, env = "VMFKDE_IRS", value_delimiter = ',', required = true)]
    pub irs: Vec<f64>,

    /// Comma-separated seeds.
    #[arg(long, env = "VMFKDE_SEEDS", value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,

    /// Comma-separated subset of none, ros, smote, gauss-kde, vmf-kde.
    #[arg(
        long,
        env = "VMFKDE_METHODS",
        value_delimiter = ',',
        value_parser = method_parser(),
        default_value = "none,ros,smote,gauss-kde,vmf-kde"
    )]
    pub methods: Vec<Method>,

    #[arg(long, env = "VMFKDE_NMAX")]
    pub nmax: Option<usize>,

    #[arg(long, env = "VMFKDE_GROUP_THRESHOLDS", default_value = "100,20", value_parser = parse_thresholds)]
    pub group_thresholds: GroupThresholds,

    #[arg(long, env = "VMFKDE_SMOTE_K", default_value_t = vmfkde::balance::DEFAULT_SMOTE_K)]
    pub smote_k: usize,

    #[command(flatten)]
    pub train_options: TrainOptions,

    /// Directory receiving `grid.csv` and `grid.manifest.json`.
    #[arg(long, env = "VMFKDE_OUTPUT_DIR")]
    pub output_dir: PathBuf,
}

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{Context, Result};
use rayon::prelude::*;
use vmfkde::balance::{BalancedSet, Method, Provenance};
use vmfkde::classifier::{train_logreg_detailed, EvalReport, Group, LinearClassifier, Samples, TrainConfig};
use vmfkde::dataset::{class_counts, write_embeddings, EmbeddingDataset};

use crate::args::{BalanceArgs, EvalArgs, GridArgs, SubsampleArgs, TrainArgs};
use crate::output::{
    sibling, thresholds_flag, write_json, BalanceManifest, EvalConfigEcho, GridCell, GridManifest,
    GridRow, ProvenanceSidecar, ReportJson, Tool, TrainSettings,
};
use crate::pipeline::{balance_seeded, load, restrict_classes, score, subsample, usage};

fn counts_line(counts: &BTreeMap<u32, usize>) -> String {
    counts.values().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn subsample_cmd(args: &SubsampleArgs) -> Result<()> {
    let mut ds = load(&args.input)?;
    if let Some(c) = args.classes {
        ds = restrict_classes(&ds, c)?;
    }
    let out = subsample(&ds, args.ir, args.nmax, args.seed)?;
    write_embeddings(&out, &args.output).with_context(|| format!("writing {}", args.output.display()))?;
    let counts = class_counts(&out);
    println!(
        "wrote {}: {} rows, {} classes, head {} tail {}",
        args.output.display(),
        out.len(),
        out.num_classes(),
        counts.values().max().unwrap_or(&0),
        counts.values().min().unwrap_or(&0),
    );
    println!("class counts: {}", counts_line(&counts));
    Ok(())
}

fn provenance_split(set: &BalancedSet) -> usize {
    let real = set.provenance().iter().filter(|&&p| p == Provenance::Real).count();
    debug_assert!(set.provenance()[..real].iter().all(|&p| p == Provenance::Real));
    real
}

pub fn balance_cmd(args: &BalanceArgs) -> Result<()> {
    let total = Instant::now();
    let seed = match (args.method, args.seed) {
        (Method::None, seed) => seed,
        (_, Some(seed)) => Some(seed),
        (m, None) => return Err(usage(format!("--seed is required for --method {m}"))),
    };
    let mut times = BTreeMap::new();

    let t = Instant::now();
    let ds = load(&args.input)?;
    times.insert("read", t.elapsed().as_secs_f64());

    let t = Instant::now();
    let set = balance_seeded(&ds, args.method, seed.unwrap_or(0), args.smote_k)?;
    times.insert("balance", t.elapsed().as_secs_f64());

    let t = Instant::now();
    let mut out = set.to_dataset();
    out.set_class_names(ds.class_names().cloned());
    write_embeddings(&out, &args.output).with_context(|| format!("writing {}", args.output.display()))?;
    let real = provenance_split(&set);
    let provenance_path = sibling(&args.output, "provenance.json");
    write_json(
        &provenance_path,
        &ProvenanceSidecar {
            method: args.method.to_string(),
            rows: set.len(),
            real: [0, real],
            synthetic: [real, set.len()],
        },
    )?;
    times.insert("write", t.elapsed().as_secs_f64());
    times.insert("total", total.elapsed().as_secs_f64());

    let manifest_path = args.manifest.clone().unwrap_or_else(|| sibling(&args.output, "manifest.json"));
    write_json(
        &manifest_path,
        &BalanceManifest {
            command: "balance",
            tool: Tool::current(),
            input: args.input.clone(),
            output: args.output.clone(),
            provenance: provenance_path,
            method: args.method.to_string(),
            seed,
            smote_k: args.smote_k,
            dim: set.dim(),
            num_classes: set.num_classes(),
            input_class_counts: class_counts(&ds),
            class_counts: set.class_counts(),
            synthetic_counts: set.synthetic_counts(),
            wall_time_seconds: times,
        },
    )?;
    println!(
        "wrote {}: {} real + {} synthetic rows ({})",
        args.output.display(),
        real,
        set.len() - real,
        args.method
    );
    Ok(())
}

fn fit(ds: &EmbeddingDataset, cfg: &TrainConfig) -> Result<LinearClassifier> {
    let (model, report) = train_logreg_detailed(&Samples::from(ds), cfg)?;
    if !report.converged {
        eprintln!(
            "warning: stopped after {} iterations with gradient norm {:.3e}",
            report.iterations, report.gradient_inf_norm
        );
    }
    Ok(model)
}

pub fn train_cmd(args: &TrainArgs) -> Result<()> {
    let ds = load(&args.input)?;
    let model = fit(&ds, &args.train.config())?;
    model.save(&args.output).with_context(|| format!("writing {}", args.output.display()))?;
    println!(
        "wrote {}: {} classes x {} dims, trained on {} rows",
        args.output.display(),
        model.num_classes(),
        model.dim(),
        ds.len()
    );
    Ok(())
}

pub fn eval_cmd(args: &EvalArgs) -> Result<()> {
    let start = Instant::now();
    let model = LinearClassifier::load(&args.model).with_context(|| format!("reading {}", args.model.display()))?;
    let test = load(&args.test)?;
    let train = load(&args.train)?;
    let report = score(&model, &test, &class_counts(&train), &args.group_thresholds)?;
    let overall = report.overall;
    let json = ReportJson::new(
        report,
        EvalConfigEcho {
            model: args.model.clone(),
            test: args.test.clone(),
            train: args.train.clone(),
            group_thresholds: thresholds_flag(&args.group_thresholds),
            head_above: args.group_thresholds.head_above,
            tail_below: args.group_thresholds.tail_below,
        },
        start.elapsed().as_secs_f64(),
    );
    let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |a| format!("{:.4}", a));
    println!(
        "overall {:.4}  head {}  medium {}  tail {}",
        overall,
        fmt(json.head),
        fmt(json.medium),
        fmt(json.tail)
    );
    write_json(&args.output, &json)
}

struct CellResult {
    report: Result<EvalReport>,
    seconds: f64,
}

pub fn grid_cmd(args: &GridArgs) -> Result<u8> {
    let start = Instant::now();
    if args.irs.is_empty() || args.seeds.is_empty() || args.methods.is_empty() {
        return Err(usage("--irs, --seeds and --methods must each list at least one value"));
    }
    let source = load(&args.train)?;
    let test = load(&args.test)?;
    std::fs::create_dir_all(&args.output_dir)
        .with_context(|| format!("creating {}", args.output_dir.display()))?;
    let cfg = args.train_options.config();

    let splits: Vec<(f64, u64)> = args
        .irs
        .iter()
        .flat_map(|&ir| args.seeds.iter().map(move |&seed| (ir, seed)))
        .collect();
    let subsets: Vec<Result<EmbeddingDataset>> = splits
        .par_iter()
        .map(|&(ir, seed)| subsample(&source, ir, args.nmax, seed))
        .collect();

    let cells: Vec<(usize, Method)> = (0..splits.len())
        .flat_map(|s| args.methods.iter().map(move |&m| (s, m)))
        .collect();
    let results: Vec<CellResult> = cells
        .par_iter()
        .map(|&(s, method)| {
            let t = Instant::now();
            let seed = splits[s].1;
            let report = match &subsets[s] {
                Err(e) => Err(anyhow::anyhow!("subsample failed: {e:#}")),
                Ok(train) => balance_seeded(train, method, seed, args.smote_k)
                    .and_then(|set| fit(&set.to_dataset(), &cfg))
                    .and_then(|model| score(&model, &test, &class_counts(train), &args.group_thresholds)),
            };
            CellResult {
                report,
                seconds: t.elapsed().as_secs_f64(),
            }
        })
        .collect();

    let csv_path = args.output_dir.join("grid.csv");
    let mut writer = csv::Writer::from_path(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    let mut manifest_cells = Vec::with_capacity(cells.len());
    let mut failed = 0;
    for (&(s, method), result) in cells.iter().zip(&results) {
        let (ir, seed) = splits[s];
        let row = match &result.report {
            Ok(r) => GridRow {
                method: method.to_string(),
                ir,
                seed,
                overall: Some(r.overall),
                head: r.group_accuracy(Group::Head),
                medium: r.group_accuracy(Group::Medium),
                tail: r.group_accuracy(Group::Tail),
            },
            Err(_) => GridRow {
                method: method.to_string(),
                ir,
                seed,
                overall: Some(f64::NAN),
                head: Some(f64::NAN),
                medium: Some(f64::NAN),
                tail: Some(f64::NAN),
            },
        };
        writer.serialize(&row)?;
        let error = result.report.as_ref().err().map(|e| format!("{e:#}"));
        if let Some(e) = &error {
            failed += 1;
            eprintln!("cell {method} ir={ir} seed={seed} failed: {e}");
        }
        manifest_cells.push(GridCell {
            method: method.to_string(),
            ir,
            seed,
            status: if error.is_some() { "failed" } else { "ok" },
            error,
            wall_time_seconds: result.seconds,
        });
    }
    writer.flush().with_context(|| format!("writing {}", csv_path.display()))?;

    let manifest_path = args.output_dir.join("grid.manifest.json");
    write_json(
        &manifest_path,
        &GridManifest {
            command: "grid",
            tool: Tool::current(),
            train: args.train.clone(),
            test: args.test.clone(),
            irs: args.irs.clone(),
            seeds: args.seeds.clone(),
            methods: args.methods.iter().map(Method::to_string).collect(),
            nmax: args.nmax,
            group_thresholds: thresholds_flag(&args.group_thresholds),
            smote_k: args.smote_k,
            train_config: TrainSettings::from(&cfg),
            csv: csv_path.clone(),
            rows: manifest_cells.len(),
            failed,
            cells: manifest_cells,
            wall_time_seconds: start.elapsed().as_secs_f64(),
        },
    )?;
    println!(
        "wrote {} ({} rows, {} failed) and {}",
        csv_path.display(),
        cells.len(),
        failed,
        manifest_path.display()
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

#![allow(dead_code)]

pub mod schema;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use vmfkde::dataset::{write_embeddings, EmbeddingDataset};
use vmfkde::directional::{rotate_from_pole, sample_uniform_sphere, sample_vmf, UnitEmbedding, VmfParams};
use vmfkde::RngHandle;

/// The binary with every `VMFKDE_*` variable cleared.
pub fn vmfkde() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vmfkde"));
    for (key, _) in std::env::vars() {
        if key.starts_with("VMFKDE_") {
            cmd.env_remove(key);
        }
    }
    cmd
}

pub fn run(args: &[&str]) -> Output {
    vmfkde().args(args).output().expect("binary runs")
}

pub fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "vmfkde {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Rows from one vMF per class; class means at pairwise cosine `cosine`.
pub fn mixture(counts: &[usize], dim: usize, kappa: f64, cosine: f64, seed: u64) -> EmbeddingDataset {
    let c = counts.len();
    assert!(dim > c);
    let mut rng = RngHandle::new(seed, 0);
    let frame = sample_uniform_sphere(dim, 1, &mut rng).unwrap().remove(0);
    let shared = (cosine / (1.0 - cosine)).sqrt();
    let mut labels = Vec::new();
    let mut data = Vec::new();
    for (k, &n) in counts.iter().enumerate() {
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        v[c] = shared;
        let mu = rotate_from_pole(&UnitEmbedding::normalize(v).unwrap(), &frame).unwrap();
        for x in sample_vmf(&VmfParams::new(mu, kappa).unwrap(), n, &mut rng).unwrap() {
            labels.push(k as u32);
            data.extend(x.to_f32());
        }
    }
    EmbeddingDataset::new(dim, c, labels, data).unwrap()
}

pub fn write(dir: &Path, name: &str, ds: &EmbeddingDataset) -> PathBuf {
    let path = dir.join(name);
    write_embeddings(ds, &path).unwrap();
    path
}

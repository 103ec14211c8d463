use vmfkde::dataset::EmbeddingDataset;
use vmfkde::directional::{rotate_from_pole, sample_uniform_sphere, sample_vmf, UnitEmbedding, VmfParams};
use vmfkde::RngHandle;

/// `num_classes` unit vectors whose pairwise cosine is exactly `cosine`,
/// rotated by a random reflection so they are not axis aligned.
pub fn class_means(num_classes: usize, dim: usize, cosine: f64, rng: &mut RngHandle) -> Vec<UnitEmbedding> {
    assert!(dim > num_classes, "need one spare axis for the shared component");
    assert!((0.0..1.0).contains(&cosine));
    let shared = (cosine / (1.0 - cosine)).sqrt();
    let frame = sample_uniform_sphere(dim, 1, rng).unwrap().remove(0);
    (0..num_classes)
        .map(|k| {
            let mut v = vec![0.0; dim];
            v[k] = 1.0;
            v[num_classes] = shared;
            let axis = UnitEmbedding::normalize(v).unwrap();
            rotate_from_pole(&axis, &frame).unwrap()
        })
        .collect()
}

/// Rows drawn from `vMF(means[k], kappa)`, `counts[k]` per class, grouped by class.
pub fn vmf_mixture(
    means: &[UnitEmbedding],
    kappa: f64,
    counts: &[usize],
    rng: &mut RngHandle,
) -> EmbeddingDataset {
    let dim = means[0].dim();
    let mut labels = Vec::new();
    let mut data = Vec::new();
    for (k, (mu, &n)) in means.iter().zip(counts).enumerate() {
        let params = VmfParams::new(mu.clone(), kappa).unwrap();
        for x in sample_vmf(&params, n, rng).unwrap() {
            labels.push(k as u32);
            data.extend(x.to_f32());
        }
    }
    EmbeddingDataset::new(dim, means.len(), labels, data).unwrap()
}

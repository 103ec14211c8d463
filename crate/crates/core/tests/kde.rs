use proptest::prelude::*;
use vmfkde::directional::{sample_uniform_sphere, sample_vmf, UnitEmbedding, VmfParams};
use vmfkde::kde::{
    build_class_kde, estimate_local_kappa, kde_log_density, local_kappas, nearest_same_class,
    sample_kde,
};
use vmfkde::RngHandle;

fn cloud(dim: usize, n: usize, seed: u64) -> Vec<UnitEmbedding> {
    let mut rng = RngHandle::new(seed, 0);
    let mu = sample_uniform_sphere(dim, 1, &mut rng).unwrap().remove(0);
    sample_vmf(&VmfParams::new(mu, 30.0).unwrap(), n, &mut rng).unwrap()
}

#[test]
fn density_ignores_embedding_order() {
    let pts = cloud(8, 40, 1);
    let mut reversed = pts.clone();
    reversed.reverse();
    let a = build_class_kde(0, &pts, 10.0).unwrap();
    let b = build_class_kde(0, &reversed, 10.0).unwrap();
    for x in cloud(8, 20, 2) {
        let (da, db) = (kde_log_density(&a, &x).unwrap(), kde_log_density(&b, &x).unwrap());
        assert!((da - db).abs() <= 1e-12 * da.abs().max(1.0));
    }
}

#[test]
fn local_kappas_parallel_path_matches_pairwise_definition() {
    // 300 rows crosses the threshold where the search fans out over threads
    let pts = cloud(16, 300, 3);
    let kappas = local_kappas(&pts).unwrap();
    for (i, &k) in kappas.iter().enumerate() {
        let j = nearest_same_class(i, &pts).unwrap();
        assert_eq!(k, estimate_local_kappa(&pts[i], &pts[j], 16));
    }
}

#[test]
fn samples_are_drawn_near_the_data() {
    let pts = cloud(32, 50, 4);
    let kde = build_class_kde(3, &pts, 10.0).unwrap();
    let mut rng = RngHandle::new(9, 0);
    let draws = sample_kde(&kde, 500, &mut rng).unwrap();
    for x in &draws {
        assert!((x.norm() - 1.0).abs() < 1e-12);
        let best = pts.iter().map(|z| z.dot(x)).fold(f64::MIN, f64::max);
        assert!(best > 0.5, "draw far from every kernel (max cosine {best})");
    }
    let again = sample_kde(&kde, 500, &mut RngHandle::new(9, 0)).unwrap();
    assert_eq!(draws, again);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pair_estimate_is_symmetric(seed in any::<u64>(), dim in 2usize..100) {
        let mut rng = RngHandle::new(seed, 0);
        let p = sample_uniform_sphere(dim, 2, &mut rng).unwrap();
        prop_assert_eq!(
            estimate_local_kappa(&p[0], &p[1], dim),
            estimate_local_kappa(&p[1], &p[0], dim)
        );
    }

    #[test]
    fn local_kappas_are_finite_and_nonnegative(seed in any::<u64>(), n in 2usize..30) {
        let pts = cloud(5, n, seed);
        for k in local_kappas(&pts).unwrap() {
            prop_assert!(k.is_finite() && k >= 0.0);
        }
    }
}

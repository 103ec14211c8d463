mod common;

use common::synth::{class_means, vmf_mixture};
use proptest::prelude::*;
use vmfkde::balance::{balance, compute_targets, BalanceOptions, Method, Provenance};
use vmfkde::dataset::{class_counts, EmbeddingDataset};
use vmfkde::RngHandle;

fn fixture(counts: &[usize], dim: usize, seed: u64) -> EmbeddingDataset {
    let mut rng = RngHandle::new(seed, 0);
    let means = class_means(counts.len(), dim, 0.2, &mut rng);
    vmf_mixture(&means, 50.0, counts, &mut rng)
}

#[test]
fn none_returns_the_input_bitwise() {
    let ds = fixture(&[30, 5, 1], 8, 1);
    let set = balance(&ds, Method::None, &BalanceOptions::default(), &mut RngHandle::new(0, 0)).unwrap();
    assert_eq!(set.labels(), ds.labels());
    assert!(set.data().iter().zip(ds.data()).all(|(a, b)| a.to_bits() == b.to_bits()));
    assert!(set.provenance().iter().all(|&p| p == Provenance::Real));
}

#[test]
fn synthetic_rows_follow_real_rows_by_ascending_class() {
    let ds = fixture(&[3, 20, 7, 1], 6, 2);
    for method in Method::ALL.into_iter().filter(|m| m.is_stochastic()) {
        let set = balance(&ds, method, &BalanceOptions::default(), &mut RngHandle::new(4, 0)).unwrap();
        let synth_labels: Vec<u32> = set
            .labels()
            .iter()
            .zip(set.provenance())
            .skip(ds.len())
            .map(|(&l, &p)| {
                assert_eq!(p, Provenance::Synthetic);
                l
            })
            .collect();
        assert!(synth_labels.windows(2).all(|w| w[0] <= w[1]), "{method}");
        let plan = compute_targets(&class_counts(&ds)).unwrap();
        assert_eq!(synth_labels.len(), plan.total_synthetic(), "{method}");
    }
}

#[test]
fn vmf_kde_synthetic_rows_stay_in_their_class_region() {
    let mut rng = RngHandle::new(5, 0);
    let means = class_means(4, 32, 0.2, &mut rng);
    let ds = vmf_mixture(&means, 200.0, &[60, 10, 3, 2], &mut rng);
    let set = balance(&ds, Method::VmfKde, &BalanceOptions::default(), &mut rng).unwrap();
    for i in ds.len()..set.len() {
        let row = set.row(i);
        let label = set.labels()[i] as usize;
        let cosines: Vec<f64> = means
            .iter()
            .map(|m| m.as_slice().iter().zip(row).map(|(a, &b)| a * b as f64).sum())
            .collect();
        let best = (0..4).max_by(|&a, &b| cosines[a].total_cmp(&cosines[b])).unwrap();
        assert_eq!(best, label, "synthetic row {i} drifted to class {best}");
    }
}

#[test]
fn different_seeds_give_different_synthetic_rows() {
    let ds = fixture(&[20, 4], 6, 3);
    let opts = BalanceOptions::default();
    let a = balance(&ds, Method::VmfKde, &opts, &mut RngHandle::new(1, 0)).unwrap();
    let b = balance(&ds, Method::VmfKde, &opts, &mut RngHandle::new(2, 0)).unwrap();
    assert_ne!(a.data(), b.data());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_method_meets_its_contract(
        counts in prop::collection::vec(1usize..25, 2..6),
        seed in any::<u64>(),
    ) {
        let ds = fixture(&counts, 8, seed);
        let n_max = *counts.iter().max().unwrap();
        for method in Method::ALL {
            let opts = BalanceOptions::default();
            let a = balance(&ds, method, &opts, &mut RngHandle::new(seed, 1)).unwrap();
            let b = balance(&ds, method, &opts, &mut RngHandle::new(seed, 1)).unwrap();
            prop_assert_eq!(a.data(), b.data());
            prop_assert_eq!(a.labels(), b.labels());

            let real = a.real_rows();
            prop_assert_eq!(real.labels(), ds.labels());
            prop_assert!(real.data().iter().zip(ds.data()).all(|(x, y)| x.to_bits() == y.to_bits()));

            if method != Method::None {
                prop_assert!(a.class_counts().values().all(|&n| n == n_max));
                for i in ds.len()..a.len() {
                    let norm = a.row(i).iter().map(|&v| (v as f64).powi(2)).sum::<f64>().sqrt();
                    prop_assert!((norm - 1.0).abs() <= 1e-6, "{} row {} norm {}", method, i, norm);
                }
            }
        }
    }
}

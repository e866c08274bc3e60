use std::collections::BTreeMap;

use ncwalk_core::sampler::{sample_partition_walk, sample_two_regular_partition};
use ncwalk_core::tableau::{partition_to_tableau, tableau_to_partition};
use ncwalk_core::verify::{chi_square_uniformity, enumerate_partitions, PartitionFilter};
use ncwalk_core::{PartitionSampler, RandomStream, SizeLimit, TwoRegularSampler};
use proptest::prelude::*;

#[test]
fn every_plain_partition_of_six_appears() {
    let universe = enumerate_partitions(6, PartitionFilter::NonCrossing3).unwrap();
    let sampler = PartitionSampler::new(6, SizeLimit::default()).unwrap();
    let mut rng = RandomStream::new(2024);
    let mut counts = BTreeMap::new();
    for _ in 0..50 * universe.len() {
        *counts.entry(sampler.sample(&mut rng).unwrap()).or_insert(0u64) += 1;
    }
    let report = chi_square_uniformity(&universe, &counts).unwrap();
    assert!(report.every_class_seen(), "{report}");
}

#[test]
fn every_two_regular_partition_of_six_appears() {
    let universe = enumerate_partitions(6, PartitionFilter::TwoRegularNonCrossing3).unwrap();
    let sampler = TwoRegularSampler::new(6, SizeLimit::default()).unwrap();
    assert_eq!(sampler.universe_size(), &universe.len().into());
    let mut rng = RandomStream::new(2024);
    let mut counts = BTreeMap::new();
    for _ in 0..50 * universe.len() {
        *counts.entry(sampler.sample(&mut rng).unwrap()).or_insert(0u64) += 1;
    }
    let report = chi_square_uniformity(&universe, &counts).unwrap();
    assert!(report.every_class_seen(), "{report}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_walks_round_trip(seed in any::<u64>(), n in 1usize..30) {
        let sampler = PartitionSampler::new(n, SizeLimit::default()).unwrap();
        let mut rng = RandomStream::new(seed);
        let walk = sample_partition_walk(n, &mut rng, sampler.table()).unwrap();
        let p = tableau_to_partition(&walk).unwrap();
        prop_assert!(p.max_mutual_crossing() < 3);
        prop_assert_eq!(partition_to_tableau(&p).unwrap(), walk);
    }

    #[test]
    fn two_regular_samples_are_valid(seed in any::<u64>(), n in 1usize..30) {
        let sampler = TwoRegularSampler::new(n, SizeLimit::default()).unwrap();
        let mut rng = RandomStream::new(seed);
        let p = sample_two_regular_partition(n, &mut rng, sampler.table()).unwrap();
        prop_assert_eq!(p.n(), n);
        prop_assert!(p.is_m_regular(2));
        prop_assert!(p.max_mutual_crossing() < 3);
    }
}

use ncwalk_core::engine::{build_omega, build_sigma_star, load_table, save_table, SigmaMethod};
use ncwalk_core::verify::{count_partitions, PartitionFilter};
use ncwalk_core::SizeLimit;
use num_bigint::BigUint;

#[test]
fn omega_counts_match_enumeration() {
    let omega = build_omega(9, SizeLimit::default()).unwrap();
    for n in 1..=9 {
        let oracle = count_partitions(n, PartitionFilter::NonCrossing3).unwrap();
        assert_eq!(omega.get(2 * n, 1, 0), &BigUint::from(oracle), "n={n}");
    }
}

#[test]
fn sigma_counts_match_enumeration() {
    let sigma = build_sigma_star(8, SigmaMethod::DirectDp, SizeLimit::default()).unwrap();
    let mut counts = Vec::new();
    for n in 1..=9 {
        let oracle = count_partitions(n, PartitionFilter::TwoRegularNonCrossing3).unwrap();
        assert_eq!(sigma.get(2 * (n - 1), 1, 0), &BigUint::from(oracle), "n={n}");
        counts.push(oracle);
    }
    assert_eq!(&counts[1..4], &[1, 2, 5]);
}

#[test]
fn cached_table_survives_a_file() {
    let omega = build_omega(20, SizeLimit::default()).unwrap();
    let path = std::env::temp_dir().join(format!("ncwalk-counting-{}.tbl", std::process::id()));
    save_table(&omega, std::io::BufWriter::new(std::fs::File::create(&path).unwrap())).unwrap();
    let back = load_table(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, omega);
}

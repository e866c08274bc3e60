//! Oracles and statistical checks for the counting and sampling code.

mod oracle;
mod suite;
mod uniformity;

pub use oracle::{
    count_partitions, enumerate_partitions, enumerate_walks, for_each_partition, walk_endpoint_counts, OracleError,
    PartitionFilter, WalkKind, MAX_PARTITION_N, MAX_WALK_LENGTH,
};
pub use suite::{cross_check_suite, cross_check_suite_with, CheckResult, SuiteOptions, SuiteReport, SUITE_MAX_N};
pub use uniformity::{
    chi_square_uniformity, wilson_hilferty_quantile, with_one_retry, PBound, UniformityError, UniformityReport, BAND,
};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{EngineError, SizeLimit};
use crate::sampler::{PartitionSampler, RandomStream, SamplerError, TwoRegularSampler, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Uniformity(#[from] UniformityError),
    #[error("bijection check aborted: {0}")]
    Bijection(String),
    #[error("suite runs exhaustive checks up to n = {cap}, got {n_max}")]
    SuiteCap { n_max: usize, cap: usize },
}

impl Variant {
    pub fn filter(self) -> PartitionFilter {
        match self {
            Variant::Plain => PartitionFilter::NonCrossing3,
            Variant::TwoRegular => PartitionFilter::TwoRegularNonCrossing3,
        }
    }
}

/// Draws `per_class * |universe|` samples at `n` with `seed` and tests them
/// for uniformity over the oracle universe.
pub fn sampler_uniformity(
    variant: Variant,
    n: usize,
    per_class: u64,
    seed: u64,
) -> Result<UniformityReport, VerifyError> {
    let universe = enumerate_partitions(n, variant.filter())?;
    let samples = per_class * universe.len() as u64;
    let mut rng = RandomStream::new(seed);
    let mut counts = BTreeMap::new();
    let limit = SizeLimit::default();
    match variant {
        Variant::Plain => {
            let sampler = PartitionSampler::new(n, limit)?;
            for _ in 0..samples {
                *counts.entry(sampler.sample(&mut rng)?).or_insert(0) += 1;
            }
        }
        Variant::TwoRegular => {
            let sampler = TwoRegularSampler::new(n, limit)?;
            for _ in 0..samples {
                *counts.entry(sampler.sample(&mut rng)?).or_insert(0) += 1;
            }
        }
    }
    Ok(chi_square_uniformity(&universe, &counts)?)
}

/// [`sampler_uniformity`] under the one-retry policy: passes iff the first
/// run passes or the run with the next seed does.
pub fn sampler_uniformity_with_retry(
    variant: Variant,
    n: usize,
    per_class: u64,
    seed: u64,
) -> Result<Vec<(u64, UniformityReport)>, VerifyError> {
    with_one_retry(seed, |s| sampler_uniformity(variant, n, per_class, s))
}

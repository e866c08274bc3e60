//! Brute-force enumerations. Nothing here reads a count table; the only
//! shared code is the partition type and its crossing predicates.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::model::SetPartition;

pub const MAX_PARTITION_N: usize = 12;
pub const MAX_WALK_LENGTH: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("partition enumeration capped at n = {cap}, got {n}")]
    PartitionCap { n: usize, cap: usize },
    #[error("walk enumeration capped at length {cap}, got {length}")]
    WalkCap { length: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionFilter {
    All,
    NonCrossing3,
    TwoRegularNonCrossing3,
}

impl PartitionFilter {
    pub fn accepts(self, p: &SetPartition) -> bool {
        match self {
            PartitionFilter::All => true,
            PartitionFilter::NonCrossing3 => p.is_three_noncrossing(),
            PartitionFilter::TwoRegularNonCrossing3 => p.is_m_regular(2) && p.is_three_noncrossing(),
        }
    }
}

/// Calls `visit` on every partition of `[n]` in restricted-growth-string
/// order. Partitions need a non-empty ground set, so `n = 0` visits nothing.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(SetPartition)) -> Result<(), OracleError> {
    if n > MAX_PARTITION_N {
        return Err(OracleError::PartitionCap {
            n,
            cap: MAX_PARTITION_N,
        });
    }
    if n == 0 {
        return Ok(());
    }
    // rgs[k] <= 1 + max(rgs[..k]); prefix_max[k] = max(rgs[..=k]).
    let mut rgs = vec![0usize; n];
    let mut prefix_max = vec![0usize; n];
    loop {
        visit(SetPartition::from_restricted_growth(&rgs));
        let mut k = n - 1;
        loop {
            if k == 0 {
                return Ok(());
            }
            if rgs[k] <= prefix_max[k - 1] {
                rgs[k] += 1;
                prefix_max[k] = prefix_max[k - 1].max(rgs[k]);
                for m in k + 1..n {
                    rgs[m] = 0;
                    prefix_max[m] = prefix_max[k];
                }
                break;
            }
            k -= 1;
        }
    }
}

pub fn enumerate_partitions(n: usize, filter: PartitionFilter) -> Result<Vec<SetPartition>, OracleError> {
    let mut out = Vec::new();
    for_each_partition(n, |p| {
        if filter.accepts(&p) {
            out.push(p);
        }
    })?;
    Ok(out)
}

pub fn count_partitions(n: usize, filter: PartitionFilter) -> Result<u64, OracleError> {
    let mut count = 0;
    for_each_partition(n, |p| count += u64::from(filter.accepts(&p)))?;
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkKind {
    /// Odd steps remove or rest, even steps add or rest, inside `a > b >= 0`.
    PartitionChamber,
    /// Odd steps add or rest, even steps remove or rest, inside `a > b >= 0`.
    BraidChamber,
    /// As `BraidChamber`, never `+e1` on an odd step followed by `-e1`.
    LoopFreeBraidChamber,
}

const REST: (i64, i64) = (0, 0);
const ADDS: [(i64, i64); 3] = [REST, (1, 0), (0, 1)];
const REMOVES: [(i64, i64); 3] = [REST, (-1, 0), (0, -1)];

impl WalkKind {
    fn steps(self, index: usize) -> &'static [(i64, i64); 3] {
        let odd = index % 2 == 1;
        match (self, odd) {
            (WalkKind::PartitionChamber, true) => &REMOVES,
            (WalkKind::PartitionChamber, false) => &ADDS,
            (_, true) => &ADDS,
            (_, false) => &REMOVES,
        }
    }

    fn forbids(self, index: usize, previous: (i64, i64), step: (i64, i64)) -> bool {
        self == WalkKind::LoopFreeBraidChamber && index.is_multiple_of(2) && previous == (1, 0) && step == (-1, 0)
    }
}

struct Search {
    kind: WalkKind,
    length: usize,
    target: Option<(i64, i64)>,
    counts: BTreeMap<(usize, usize), u64>,
}

impl Search {
    fn go(&mut self, index: usize, a: i64, b: i64, previous: (i64, i64)) {
        let left = self.length - (index - 1);
        if let Some((ta, tb)) = self.target {
            if ((a - ta).abs() + (b - tb).abs()) as usize > left {
                return;
            }
        }
        if index > self.length {
            *self.counts.entry((a as usize, b as usize)).or_insert(0) += 1;
            return;
        }
        for &step in self.kind.steps(index) {
            if self.kind.forbids(index, previous, step) {
                continue;
            }
            let (x, y) = (a + step.0, b + step.1);
            if x > y && y >= 0 {
                self.go(index + 1, x, y, step);
            }
        }
    }
}

/// Number of walks of each endpoint, by depth-first enumeration from `(1, 0)`.
pub fn walk_endpoint_counts(kind: WalkKind, length: usize) -> Result<BTreeMap<(usize, usize), u64>, OracleError> {
    if length > MAX_WALK_LENGTH {
        return Err(OracleError::WalkCap {
            length,
            cap: MAX_WALK_LENGTH,
        });
    }
    let mut search = Search {
        kind,
        length,
        target: None,
        counts: BTreeMap::new(),
    };
    search.go(1, 1, 0, REST);
    Ok(search.counts)
}

/// Number of walks of `length` steps from `(1, 0)` to `(a, b)`.
pub fn enumerate_walks(kind: WalkKind, length: usize, end: (usize, usize)) -> Result<BigUint, OracleError> {
    if length > MAX_WALK_LENGTH {
        return Err(OracleError::WalkCap {
            length,
            cap: MAX_WALK_LENGTH,
        });
    }
    let mut search = Search {
        kind,
        length,
        target: Some((end.0 as i64, end.1 as i64)),
        counts: BTreeMap::new(),
    };
    search.go(1, 1, 0, REST);
    Ok(BigUint::from(search.counts.get(&end).copied().unwrap_or(0)))
}

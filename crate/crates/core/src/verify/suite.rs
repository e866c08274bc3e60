//! Cross-checks every counting identity against the oracles.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;

use crate::engine::{
    build_f_table, build_omega, build_q2_table, build_sigma_star, first_difference, Axis, CountTable, FMethod,
    KernelRoute, SigmaMethod, SizeLimit,
};
use crate::tableau::{
    braid_tableau_to_braid, enumerate_tableaux, has_loop_pair, partition_to_tableau, tableau_to_partition,
    theta_forward, theta_inverse, Flavor,
};

use super::oracle::{count_partitions, enumerate_partitions, walk_endpoint_counts, PartitionFilter, WalkKind};
use super::VerifyError;

/// Largest `n` accepted by the suite.
pub const SUITE_MAX_N: usize = 9;
/// Bijection checks enumerate every tableau; capped separately.
const BIJECTION_MAX_N: usize = 8;
/// Longest walks enumerated for the table comparison.
const WALK_MAX_LENGTH: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn new(name: &'static str, outcome: Result<String, String>) -> Self {
        match outcome {
            Ok(details) => CheckResult {
                name,
                passed: true,
                details,
            },
            Err(details) => CheckResult {
                name,
                passed: false,
                details,
            },
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "fail" };
        write!(f, "CHECK {} {} {}", self.name, verdict, self.details)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One `CHECK <name> <pass|fail> <details>` line per check.
    pub fn summary(&self) -> String {
        self.checks.iter().map(|c| format!("{c}\n")).collect()
    }
}

/// Deliberate corruption for exercising the suite itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Adds one to this `(s, i, j)` cell of the chamber table before checking.
    pub omega_fault: Option<(usize, usize, usize)>,
}

pub fn cross_check_suite(n_max: usize) -> Result<SuiteReport, VerifyError> {
    cross_check_suite_with(n_max, &SuiteOptions::default())
}

pub fn cross_check_suite_with(n_max: usize, options: &SuiteOptions) -> Result<SuiteReport, VerifyError> {
    if n_max > SUITE_MAX_N {
        return Err(VerifyError::SuiteCap {
            n_max,
            cap: SUITE_MAX_N,
        });
    }
    let limit = SizeLimit::default();
    let mut omega = build_omega(n_max, limit)?;
    if let Some((s, i, j)) = options.omega_fault {
        let bumped = omega.get(s, i, j) + 1u32;
        omega.set(s, i, j, bumped);
    }
    let sigma = build_sigma_star(n_max, SigmaMethod::DirectDp, limit)?;

    let checks = vec![
        CheckResult::new("omega_counts", omega_counts(&omega, n_max)?),
        CheckResult::new("sigma_counts", sigma_counts(&sigma, n_max)?),
        CheckResult::new("tableau_round_trip", tableau_round_trip(n_max)?),
        CheckResult::new("theta_bijection", theta_bijection(n_max)?),
        CheckResult::new("f_routes", f_routes(n_max)?),
        CheckResult::new("sigma_routes", sigma_routes(n_max, &sigma)?),
        CheckResult::new("axis_identities", axis_identities(n_max)?),
        CheckResult::new("walk_tables", walk_tables(&omega, &sigma, n_max)?),
    ];
    Ok(SuiteReport { checks })
}

type Outcome = Result<Result<String, String>, VerifyError>;

fn omega_counts(omega: &CountTable, n_max: usize) -> Outcome {
    for n in 1..=n_max {
        let oracle = BigUint::from(count_partitions(n, PartitionFilter::NonCrossing3)?);
        let table = omega.get(2 * n, 1, 0);
        if table != &oracle {
            return Ok(Err(format!("n={n} ({},1,0): table {table}, oracle {oracle}", 2 * n)));
        }
    }
    Ok(Ok(format!("n=1..{n_max}")))
}

fn sigma_counts(sigma: &CountTable, n_max: usize) -> Outcome {
    for n in 1..=n_max {
        let oracle = BigUint::from(count_partitions(n, PartitionFilter::TwoRegularNonCrossing3)?);
        let s = 2 * (n - 1);
        let table = sigma.get(s, 1, 0);
        if table != &oracle {
            return Ok(Err(format!("n={n} ({s},1,0): table {table}, oracle {oracle}")));
        }
    }
    Ok(Ok(format!("n=1..{n_max}")))
}

fn tableau_round_trip(n_max: usize) -> Outcome {
    let top = n_max.min(BIJECTION_MAX_N);
    let mut checked = 0usize;
    for n in 1..=top {
        let partitions = enumerate_partitions(n, PartitionFilter::NonCrossing3)?;
        let mut images = HashSet::new();
        for p in &partitions {
            let t = match partition_to_tableau(p) {
                Ok(t) => t,
                Err(e) => return Ok(Err(format!("n={n} {p}: {e}"))),
            };
            if t.validate().is_err() {
                return Ok(Err(format!("n={n} {p}: invalid tableau {t}")));
            }
            match tableau_to_partition(&t) {
                Ok(back) if &back == p => {}
                Ok(back) => return Ok(Err(format!("n={n} {p} -> {t} -> {back}"))),
                Err(e) => return Ok(Err(format!("n={n} {p} -> {t}: {e}"))),
            }
            images.insert(t);
        }
        let tableaux = enumerate_tableaux(Flavor::Partition, n);
        if images.len() != partitions.len() || tableaux.len() != partitions.len() {
            return Ok(Err(format!(
                "n={n}: {} partitions, {} distinct images, {} tableaux",
                partitions.len(),
                images.len(),
                tableaux.len()
            )));
        }
        if let Some(t) = tableaux.iter().find(|t| !images.contains(*t)) {
            return Ok(Err(format!("n={n}: tableau {t} is not the image of any partition")));
        }
        checked += partitions.len();
    }
    Ok(Ok(format!("n=1..{top}, {checked} partitions")))
}

fn theta_bijection(n_max: usize) -> Outcome {
    let top = n_max.min(BIJECTION_MAX_N);
    for n in 1..=top {
        let tableaux = enumerate_tableaux(Flavor::Partition, n);
        let braids: HashSet<_> = enumerate_tableaux(Flavor::Braid, n - 1).into_iter().collect();
        let mut images = HashSet::new();
        let mut two_regular = 0usize;
        for t in &tableaux {
            let b = theta_forward(t).map_err(|e| VerifyError::Bijection(e.to_string()))?;
            if !braids.contains(&b) {
                return Ok(Err(format!("n={n}: theta({t}) = {b} is not a braid tableau")));
            }
            if theta_inverse(&b).as_ref() != Ok(t) {
                return Ok(Err(format!("n={n}: theta^-1(theta({t})) differs")));
            }
            let regular = tableau_to_partition(t)
                .map_err(|e| VerifyError::Bijection(e.to_string()))?
                .is_m_regular(2);
            if regular == has_loop_pair(&b) {
                return Ok(Err(format!("n={n}: {t} two-regular={regular} but loop pair={}", !regular)));
            }
            let braid = braid_tableau_to_braid(&b).map_err(|e| VerifyError::Bijection(e.to_string()))?;
            if braid.has_loops() != has_loop_pair(&b) || braid.max_mutual_crossing() >= 3 {
                return Ok(Err(format!("n={n}: braid {b} decodes inconsistently")));
            }
            two_regular += usize::from(regular);
            images.insert(b);
        }
        if images.len() != braids.len() {
            return Ok(Err(format!(
                "n={n}: {} images of {} braid tableaux",
                images.len(),
                braids.len()
            )));
        }
        let oracle = count_partitions(n, PartitionFilter::TwoRegularNonCrossing3)? as usize;
        if two_regular != oracle {
            return Ok(Err(format!("n={n}: {two_regular} loop-free images, oracle {oracle}")));
        }
    }
    Ok(Ok(format!("n=1..{top}")))
}

fn describe(first: Option<(usize, usize, usize)>, left: &CountTable, right: &CountTable) -> Result<String, String> {
    match first {
        None => Ok(format!("n={}", left.n())),
        Some((s, i, j)) => Err(format!(
            "({s},{i},{j}): {} vs {}",
            left.get(s, i, j),
            right.get(s, i, j)
        )),
    }
}

fn f_routes(n_max: usize) -> Outcome {
    let limit = SizeLimit::default();
    let direct = build_f_table(n_max, FMethod::Direct, limit)?;
    let kernel = build_f_table(n_max, FMethod::KernelRecursion, limit)?;
    Ok(describe(first_difference(&direct, &kernel), &direct, &kernel))
}

fn sigma_routes(n_max: usize, direct: &CountTable) -> Outcome {
    let ie = build_sigma_star(n_max, SigmaMethod::InclusionExclusion, SizeLimit::default())?;
    Ok(describe(first_difference(direct, &ie), direct, &ie))
}

fn axis_identities(n_max: usize) -> Outcome {
    let a = build_q2_table(n_max, SizeLimit::default())?;
    let mut route = KernelRoute::new();
    for ell in 0..=n_max {
        for k in 0..=ell + 1 {
            for (axis, (i, j)) in [(Axis::Horizontal, (k, 0)), (Axis::Vertical, (0, k))] {
                let value = route.axis_coeff(axis, k, ell)?;
                let table = a.get(2 * ell, i, j);
                if &value != table {
                    return Ok(Err(format!("{axis:?} l={ell} k={k}: {value} vs a({},{i},{j})={table}", 2 * ell)));
                }
            }
        }
    }
    Ok(Ok(format!("l=0..{n_max}")))
}

fn compare_endpoints(kind: WalkKind, table: &CountTable, length: usize) -> Result<Result<(), String>, VerifyError> {
    let oracle = walk_endpoint_counts(kind, length)?;
    let bound = table.layer_bound(length).max(oracle.keys().map(|&(a, b)| a + b).max().unwrap_or(0));
    for i in 0..=bound {
        for j in 0..=bound - i {
            let expected = BigUint::from(oracle.get(&(i, j)).copied().unwrap_or(0));
            let found = table.get(length, i, j);
            if found != &expected {
                return Ok(Err(format!(
                    "{} ({length},{i},{j}): table {found}, oracle {expected}",
                    table.kind()
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn walk_tables(omega: &CountTable, sigma: &CountTable, n_max: usize) -> Outcome {
    let top = (2 * n_max).min(WALK_MAX_LENGTH);
    for length in 0..=top {
        if let Err(e) = compare_endpoints(WalkKind::PartitionChamber, omega, length)? {
            return Ok(Err(e));
        }
        if let Err(e) = compare_endpoints(WalkKind::LoopFreeBraidChamber, sigma, length)? {
            return Ok(Err(e));
        }
    }
    // Unrestricted braid walks over [n - 1] are as many as partition walks over [n].
    for n in 1..=top / 2 {
        let braids = walk_endpoint_counts(WalkKind::BraidChamber, 2 * (n - 1))?;
        let count = BigUint::from(braids.get(&(1, 0)).copied().unwrap_or(0));
        if &count != omega.get(2 * n, 1, 0) {
            return Ok(Err(format!(
                "n={n}: {count} braid walks vs omega({},1,0)={}",
                2 * n,
                omega.get(2 * n, 1, 0)
            )));
        }
    }
    Ok(Ok(format!("lengths 0..{top}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = cross_check_suite(6).unwrap();
        assert!(report.passed(), "{}", report.summary());
        assert_eq!(report.checks.len(), 8);
        assert!(report.summary().lines().all(|l| l.starts_with("CHECK ") && l.contains(" pass ")));
    }

    #[test]
    fn trivial_suite() {
        assert!(cross_check_suite(1).unwrap().passed());
        assert!(cross_check_suite(0).unwrap().passed());
    }

    #[test]
    fn fault_in_count_cell() {
        let options = SuiteOptions {
            omega_fault: Some((8, 1, 0)),
        };
        let report = cross_check_suite_with(5, &options).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
        assert_eq!(failed, vec!["omega_counts", "walk_tables"]);
        assert!(report.checks[0].details.contains("(8,1,0)"));
    }

    #[test]
    fn fault_in_interior_cell() {
        let options = SuiteOptions {
            omega_fault: Some((5, 2, 1)),
        };
        let report = cross_check_suite_with(4, &options).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
        assert_eq!(failed, vec!["walk_tables"]);
        assert!(report.checks[7].details.contains("(5,2,1)"), "{}", report.checks[7]);
    }

    #[test]
    fn cap() {
        assert!(matches!(cross_check_suite(10), Err(VerifyError::SuiteCap { .. })));
    }
}

//! Exact uniform sampling by walking the chamber with completion counts as
//! transition weights.
//!
//! Plain partitions take one half-step at a time, weighted by the chamber
//! table. Two-regular partitions take one braid vertex (an odd and an even
//! half-step) at a time, weighted by the loop-free table, then map back
//! through the braid/partition correspondence.
//!
//! Both samplers draw only through [`RandomStream::uniform_below`] with the
//! candidate order fixed below, so a seed reproduces the same output on any
//! platform.

mod rng;

pub use rng::{RandomStream, RNG_ALGORITHM};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::engine::{build_omega, build_sigma_star, CountTable, EngineError, SigmaMethod, SizeLimit, TableKind};
use crate::model::SetPartition;
use crate::tableau::{
    tableau_to_partition, theta_inverse, Flavor, Move, Shape, TableauError, VacillatingTableau, WalkPoint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("no completion from {point} at step {step}")]
    Unreachable { step: usize, point: WalkPoint },
    #[error("weights from {point} at step {step} sum to {found}, expected {expected}")]
    Inconsistent {
        step: usize,
        point: WalkPoint,
        expected: BigUint,
        found: BigUint,
    },
    #[error("{kind} table covers {have} vertices, {need} needed")]
    TableTooSmall { kind: TableKind, have: usize, need: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// Which family of partitions to count or sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// 3-noncrossing partitions.
    #[default]
    Plain,
    /// 2-regular 3-noncrossing partitions.
    TwoRegular,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::TwoRegular => "two_regular",
        }
    }
}

/// One braid vertex: an odd (adding) move, then an even (removing) move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStep {
    pub odd: Move,
    pub even: Move,
    /// Point between the two half-steps.
    pub via: WalkPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate<'t, S> {
    pub step: S,
    pub point: WalkPoint,
    pub weight: &'t BigUint,
}

/// Candidates out of one state with their completion counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionDistribution<'t, S> {
    candidates: Vec<Candidate<'t, S>>,
    total: BigUint,
}

impl<'t, S: Copy> TransitionDistribution<'t, S> {
    fn new(candidates: Vec<Candidate<'t, S>>) -> Self {
        let total = candidates.iter().map(|c| c.weight).sum();
        TransitionDistribution { candidates, total }
    }

    pub fn candidates(&self) -> &[Candidate<'t, S>] {
        &self.candidates
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// The candidate whose cumulative weight range contains `r < total`.
    pub fn pick(&self, r: &BigUint) -> &Candidate<'t, S> {
        let mut rest = r.clone();
        for c in &self.candidates {
            if &rest < c.weight {
                return c;
            }
            rest -= c.weight;
        }
        panic!("pick({r}) with total {}", self.total);
    }

    fn draw(&self, rng: &mut RandomStream, step: usize, point: WalkPoint) -> Result<&Candidate<'t, S>, SamplerError> {
        if self.total.is_zero() {
            return Err(SamplerError::Unreachable { step, point });
        }
        Ok(self.pick(&rng.uniform_below(&self.total)))
    }
}

const STEP_ORDER_ODD: [Move; 3] = [Move::Nothing, Move::RemoveRow1, Move::RemoveRow2];
const STEP_ORDER_EVEN: [Move; 3] = [Move::Nothing, Move::AddRow1, Move::AddRow2];
const PAIR_ORDER_ODD: [Move; 3] = [Move::Nothing, Move::AddRow1, Move::AddRow2];
const PAIR_ORDER_EVEN: [Move; 3] = [Move::Nothing, Move::RemoveRow1, Move::RemoveRow2];

fn require_table(table: &CountTable, kind: TableKind, need: usize) -> Result<(), SamplerError> {
    if table.kind() != kind {
        return Err(EngineError::WrongKind {
            expected: kind,
            found: table.kind(),
        }
        .into());
    }
    if table.n() < need {
        return Err(SamplerError::TableTooSmall {
            kind,
            have: table.n(),
            need,
        });
    }
    Ok(())
}

fn check_total<S: Copy>(
    dist: &TransitionDistribution<'_, S>,
    expected: &BigUint,
    step: usize,
    point: WalkPoint,
) -> Result<(), SamplerError> {
    if dist.total() != expected {
        return Err(SamplerError::Inconsistent {
            step,
            point,
            expected: expected.clone(),
            found: dist.total().clone(),
        });
    }
    Ok(())
}

/// Candidates for half-step `h + 1` of a length-`2n` partition walk at `p`.
///
/// Weight of `p'` is `omega(2n - h - 1, p')`: by reversal, the number of
/// chamber walks from `p'` back to `(1, 0)` in the remaining steps.
pub fn partition_step_weights<'t>(
    p: WalkPoint,
    h: usize,
    n: usize,
    omega: &'t CountTable,
) -> Result<TransitionDistribution<'t, Move>, SamplerError> {
    require_table(omega, TableKind::Omega, n)?;
    assert!(h < 2 * n, "step {h} outside a walk of length {}", 2 * n);
    let order = if h.is_multiple_of(2) { STEP_ORDER_ODD } else { STEP_ORDER_EVEN };
    let remaining = 2 * n - h - 1;
    let candidates = order
        .iter()
        .filter_map(|&mv| {
            let q = p.step(mv)?;
            Some(Candidate {
                step: mv,
                point: q,
                weight: omega.get(remaining, q.a, q.b),
            })
        })
        .collect();
    let dist = TransitionDistribution::new(candidates);
    check_total(&dist, omega.get(remaining + 1, p.a, p.b), h, p)?;
    Ok(dist)
}

/// Candidates for braid vertex `v` (1-based, `v <= n - 1`) when sampling a
/// two-regular partition of `[n]`. The pair `(+e1, -e1)` is excluded and
/// both the intermediate and final points must stay in the chamber.
pub fn braid_pair_weights<'t>(
    p: WalkPoint,
    v: usize,
    n: usize,
    sigma_star: &'t CountTable,
) -> Result<TransitionDistribution<'t, PairStep>, SamplerError> {
    require_table(sigma_star, TableKind::SigmaStar, n.saturating_sub(1))?;
    assert!(v >= 1 && v < n, "vertex {v} outside a braid over {} vertices", n.saturating_sub(1));
    let remaining = 2 * (n - 1 - v);
    let mut candidates = Vec::with_capacity(8);
    for odd in PAIR_ORDER_ODD {
        let Some(via) = p.step(odd) else { continue };
        for even in PAIR_ORDER_EVEN {
            if (odd, even) == (Move::AddRow1, Move::RemoveRow1) {
                continue;
            }
            let Some(q) = via.step(even) else { continue };
            candidates.push(Candidate {
                step: PairStep { odd, even, via },
                point: q,
                weight: sigma_star.get(remaining, q.a, q.b),
            });
        }
    }
    let dist = TransitionDistribution::new(candidates);
    check_total(&dist, sigma_star.get(remaining + 2, p.a, p.b), v, p)?;
    Ok(dist)
}

fn accumulate(trace: &mut Option<BigRational>, weight: &BigUint, total: &BigUint) {
    if let Some(acc) = trace {
        *acc *= BigRational::new(BigInt::from(weight.clone()), BigInt::from(total.clone()));
    }
}

fn partition_walk(
    n: usize,
    rng: &mut RandomStream,
    omega: &CountTable,
    trace: &mut Option<BigRational>,
) -> Result<VacillatingTableau, SamplerError> {
    require_table(omega, TableKind::Omega, n)?;
    let mut p = WalkPoint::ORIGIN;
    let mut shapes = Vec::with_capacity(2 * n + 1);
    shapes.push(Shape::EMPTY);
    for h in 0..2 * n {
        let dist = partition_step_weights(p, h, n, omega)?;
        let chosen = dist.draw(rng, h, p)?;
        accumulate(trace, chosen.weight, dist.total());
        p = chosen.point;
        shapes.push(p.shape());
    }
    let t = VacillatingTableau::from_shapes(Flavor::Partition, shapes);
    debug_assert!(t.validate().is_ok());
    Ok(t)
}

/// A uniformly random partition tableau over `n` vertices.
pub fn sample_partition_walk(
    n: usize,
    rng: &mut RandomStream,
    omega: &CountTable,
) -> Result<VacillatingTableau, SamplerError> {
    partition_walk(n, rng, omega, &mut None)
}

/// [`sample_partition_walk`] plus the exact probability of the returned walk,
/// multiplied out from the transition probabilities.
pub fn sample_partition_walk_traced(
    n: usize,
    rng: &mut RandomStream,
    omega: &CountTable,
) -> Result<(VacillatingTableau, BigRational), SamplerError> {
    let mut trace = Some(BigRational::one());
    let t = partition_walk(n, rng, omega, &mut trace)?;
    Ok((t, trace.expect("set above")))
}

/// A uniformly random 3-noncrossing partition of `[n]`.
pub fn sample_partition(n: usize, rng: &mut RandomStream, omega: &CountTable) -> Result<SetPartition, SamplerError> {
    let t = sample_partition_walk(n, rng, omega)?;
    Ok(tableau_to_partition(&t)?)
}

fn loop_free_walk(
    n: usize,
    rng: &mut RandomStream,
    sigma_star: &CountTable,
    trace: &mut Option<BigRational>,
) -> Result<VacillatingTableau, SamplerError> {
    let vertices = n.saturating_sub(1);
    require_table(sigma_star, TableKind::SigmaStar, vertices)?;
    let mut p = WalkPoint::ORIGIN;
    let mut pairs = Vec::with_capacity(vertices);
    for v in 1..=vertices {
        let dist = braid_pair_weights(p, v, n, sigma_star)?;
        let chosen = dist.draw(rng, v, p)?;
        accumulate(trace, chosen.weight, dist.total());
        pairs.push((chosen.step.odd, chosen.step.even));
        p = chosen.point;
    }
    Ok(VacillatingTableau::from_moves(Flavor::Braid, &pairs)?)
}

/// A uniformly random loop-free braid tableau over `[n - 1]`.
pub fn sample_loop_free_walk(
    n: usize,
    rng: &mut RandomStream,
    sigma_star: &CountTable,
) -> Result<VacillatingTableau, SamplerError> {
    loop_free_walk(n, rng, sigma_star, &mut None)
}

/// [`sample_loop_free_walk`] plus the exact probability of the returned walk.
pub fn sample_loop_free_walk_traced(
    n: usize,
    rng: &mut RandomStream,
    sigma_star: &CountTable,
) -> Result<(VacillatingTableau, BigRational), SamplerError> {
    let mut trace = Some(BigRational::one());
    let t = loop_free_walk(n, rng, sigma_star, &mut trace)?;
    Ok((t, trace.expect("set above")))
}

/// A uniformly random 2-regular 3-noncrossing partition of `[n]`, `n >= 1`.
/// `sigma_star` must cover `n - 1` vertices.
pub fn sample_two_regular_partition(
    n: usize,
    rng: &mut RandomStream,
    sigma_star: &CountTable,
) -> Result<SetPartition, SamplerError> {
    if n == 1 {
        return Ok(SetPartition::singletons(1));
    }
    let braid = sample_loop_free_walk(n, rng, sigma_star)?;
    let partition = theta_inverse(&braid)?;
    Ok(tableau_to_partition(&partition)?)
}

/// Owns the chamber table for repeated plain sampling at a fixed `n`.
#[derive(Clone, Debug)]
pub struct PartitionSampler {
    n: usize,
    omega: CountTable,
}

impl PartitionSampler {
    pub fn new(n: usize, limit: SizeLimit) -> Result<Self, SamplerError> {
        Ok(PartitionSampler {
            n,
            omega: build_omega(n, limit)?,
        })
    }

    pub fn with_table(n: usize, omega: CountTable) -> Result<Self, SamplerError> {
        require_table(&omega, TableKind::Omega, n)?;
        Ok(PartitionSampler { n, omega })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &CountTable {
        &self.omega
    }

    /// Size of the sampled universe.
    pub fn universe_size(&self) -> &BigUint {
        self.omega.get(2 * self.n, 1, 0)
    }

    pub fn sample_walk(&self, rng: &mut RandomStream) -> Result<VacillatingTableau, SamplerError> {
        sample_partition_walk(self.n, rng, &self.omega)
    }

    pub fn sample(&self, rng: &mut RandomStream) -> Result<SetPartition, SamplerError> {
        sample_partition(self.n, rng, &self.omega)
    }
}

/// Owns the loop-free table for repeated two-regular sampling at a fixed `n`.
#[derive(Clone, Debug)]
pub struct TwoRegularSampler {
    n: usize,
    sigma_star: CountTable,
}

impl TwoRegularSampler {
    pub fn new(n: usize, limit: SizeLimit) -> Result<Self, SamplerError> {
        Ok(TwoRegularSampler {
            n,
            sigma_star: build_sigma_star(n.saturating_sub(1), SigmaMethod::DirectDp, limit)?,
        })
    }

    pub fn with_table(n: usize, sigma_star: CountTable) -> Result<Self, SamplerError> {
        require_table(&sigma_star, TableKind::SigmaStar, n.saturating_sub(1))?;
        Ok(TwoRegularSampler { n, sigma_star })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &CountTable {
        &self.sigma_star
    }

    pub fn universe_size(&self) -> &BigUint {
        self.sigma_star.get(2 * self.n.saturating_sub(1), 1, 0)
    }

    pub fn sample_walk(&self, rng: &mut RandomStream) -> Result<VacillatingTableau, SamplerError> {
        sample_loop_free_walk(self.n, rng, &self.sigma_star)
    }

    pub fn sample(&self, rng: &mut RandomStream) -> Result<SetPartition, SamplerError> {
        sample_two_regular_partition(self.n, rng, &self.sigma_star)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::sigma_star_direct;
    use crate::model::parse_partition;
    use crate::tableau::has_loop_pair;
    use std::collections::BTreeSet;

    fn omega(n: usize) -> CountTable {
        build_omega(n, SizeLimit::default()).unwrap()
    }

    fn pt(a: usize, b: usize) -> WalkPoint {
        WalkPoint::new(a, b).unwrap()
    }

    #[test]
    fn first_step_at_one_vertex_is_forced() {
        let table = omega(1);
        let dist = partition_step_weights(WalkPoint::ORIGIN, 0, 1, &table).unwrap();
        let steps: Vec<Move> = dist.candidates().iter().map(|c| c.step).collect();
        assert_eq!(steps, vec![Move::Nothing]);
        assert_eq!(dist.total(), &BigUint::from(1u32));
    }

    #[test]
    fn last_step_only_returns_home() {
        let table = omega(3);
        let dist = partition_step_weights(pt(1, 0), 5, 3, &table).unwrap();
        for c in dist.candidates() {
            let expected = u32::from(c.point == WalkPoint::ORIGIN);
            assert_eq!(c.weight, &BigUint::from(expected));
        }
        let dist = partition_step_weights(pt(2, 0), 4, 3, &table).unwrap();
        assert_eq!(dist.total(), &BigUint::from(1u32));
        assert_eq!(dist.pick(&BigUint::zero()).step, Move::RemoveRow1);
    }

    #[test]
    fn two_vertices_give_two_walks() {
        let table = omega(2);
        let mut seen = BTreeSet::new();
        let mut rng = RandomStream::new(5);
        for _ in 0..200 {
            seen.insert(sample_partition_walk(2, &mut rng, &table).unwrap().to_string());
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn one_vertex() {
        let table = omega(1);
        let mut rng = RandomStream::new(0);
        let t = sample_partition_walk(1, &mut rng, &table).unwrap();
        assert_eq!(t, VacillatingTableau::all_empty(Flavor::Partition, 1));
        assert_eq!(sample_partition(1, &mut rng, &table).unwrap(), SetPartition::singletons(1));
    }

    #[test]
    fn path_probability_is_exact() {
        let table = omega(6);
        let mut rng = RandomStream::new(11);
        let expected = BigRational::new(BigInt::one(), BigInt::from(202));
        for _ in 0..50 {
            let (_, prob) = sample_partition_walk_traced(6, &mut rng, &table).unwrap();
            assert_eq!(prob, expected);
        }
    }

    #[test]
    fn seeds_reproduce() {
        let table = omega(12);
        let run = |seed| {
            let mut rng = RandomStream::new(seed);
            (0..20)
                .map(|_| sample_partition(12, &mut rng, &table).unwrap().to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(42), run(42));
        assert_ne!(run(42), run(43));
    }

    #[test]
    fn larger_samples_are_three_noncrossing() {
        let sampler = PartitionSampler::new(40, SizeLimit::default()).unwrap();
        let mut rng = RandomStream::new(1);
        for _ in 0..20 {
            let p = sampler.sample(&mut rng).unwrap();
            assert_eq!(p.n(), 40);
            assert!(p.max_mutual_crossing() < 3);
        }
    }

    #[test]
    fn final_pair_from_origin() {
        let sigma = sigma_star_direct(3);
        let dist = braid_pair_weights(WalkPoint::ORIGIN, 3, 4, &sigma).unwrap();
        let reachable: Vec<(Move, Move)> = dist
            .candidates()
            .iter()
            .filter(|c| !c.weight.is_zero())
            .map(|c| (c.step.odd, c.step.even))
            .collect();
        assert_eq!(reachable, vec![(Move::Nothing, Move::Nothing)]);
        assert_eq!(dist.total(), &BigUint::from(1u32));
        assert!(dist
            .candidates()
            .iter()
            .all(|c| (c.step.odd, c.step.even) != (Move::AddRow1, Move::RemoveRow1)));
    }

    #[test]
    fn pair_totals_match_table() {
        let sigma = sigma_star_direct(6);
        let dist = braid_pair_weights(WalkPoint::ORIGIN, 5, 7, &sigma).unwrap();
        assert_eq!(dist.total(), sigma.get(4, 1, 0));
    }

    #[test]
    fn unreachable_pair_state() {
        let sigma = sigma_star_direct(3);
        let dist = braid_pair_weights(pt(2, 1), 3, 4, &sigma).unwrap();
        assert!(dist.total().is_zero());
        let mut rng = RandomStream::new(0);
        assert!(matches!(
            dist.draw(&mut rng, 0, pt(2, 1)),
            Err(SamplerError::Unreachable { .. })
        ));
    }

    #[test]
    fn two_regular_small_cases() {
        let mut rng = RandomStream::new(7);
        let two = TwoRegularSampler::new(2, SizeLimit::default()).unwrap();
        for _ in 0..10 {
            assert_eq!(two.sample(&mut rng).unwrap().to_string(), "{1}{2}");
        }
        let four = TwoRegularSampler::new(4, SizeLimit::default()).unwrap();
        let expected: BTreeSet<SetPartition> = ["{1}{2}{3}{4}", "{1,3}{2}{4}", "{1,4}{2}{3}", "{2,4}{1}{3}", "{1,3}{2,4}"]
            .iter()
            .map(|s| parse_partition(s).unwrap())
            .collect();
        let mut seen = BTreeSet::new();
        for _ in 0..300 {
            seen.insert(four.sample(&mut rng).unwrap());
        }
        assert_eq!(seen, expected);
        assert_eq!(four.universe_size(), &BigUint::from(5u32));
        let one = TwoRegularSampler::new(1, SizeLimit::default()).unwrap();
        assert_eq!(one.sample(&mut rng).unwrap(), SetPartition::singletons(1));
    }

    #[test]
    fn loop_free_walks_are_exact_and_valid() {
        let sigma = sigma_star_direct(9);
        let mut rng = RandomStream::new(3);
        let total = sigma.get(18, 1, 0).clone();
        let expected = BigRational::new(BigInt::one(), BigInt::from(total));
        for _ in 0..50 {
            let (walk, prob) = sample_loop_free_walk_traced(10, &mut rng, &sigma).unwrap();
            assert_eq!(prob, expected);
            assert!(!has_loop_pair(&walk));
            let p = tableau_to_partition(&theta_inverse(&walk).unwrap()).unwrap();
            assert!(p.is_m_regular(2));
            assert!(p.max_mutual_crossing() < 3);
        }
    }

    #[test]
    fn table_checks() {
        let sigma = sigma_star_direct(3);
        assert!(matches!(
            PartitionSampler::with_table(3, sigma.clone()),
            Err(SamplerError::Engine(EngineError::WrongKind { .. }))
        ));
        assert!(matches!(
            TwoRegularSampler::with_table(6, sigma),
            Err(SamplerError::TableTooSmall { need: 5, .. })
        ));
    }
}

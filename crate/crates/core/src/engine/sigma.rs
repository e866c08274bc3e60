//! Loop-free braid walk counts `sigma*(s, i, j)`.
//!
//! Braid walks add on odd steps and remove on even steps, stay in the
//! chamber `i > j >= 0`, and never pair an odd `+e1` with the immediately
//! following even `-e1` (that pair is a loop in the braid).

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{q2, CountTable, EngineError, Layer, SizeLimit, TableKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaMethod {
    /// Even lengths by inclusion–exclusion over chamber counts, odd lengths
    /// by one unconstrained addition step.
    InclusionExclusion,
    /// Step the constrained walk directly, remembering whether the last odd
    /// step was `+e1`.
    DirectDp,
}

/// Loop-free braid walk counts for braids over `n` vertices (`s <= 2n`).
pub fn build_sigma_star(n: usize, method: SigmaMethod, limit: SizeLimit) -> Result<CountTable, EngineError> {
    limit.check(n)?;
    match method {
        SigmaMethod::DirectDp => Ok(sigma_star_direct(n)),
        SigmaMethod::InclusionExclusion => {
            // Even length 2l reads omega at length 2l + 1.
            let omega = q2::build_omega(n + 1, SizeLimit::unbounded())?;
            sigma_star_from_omega(&omega, n)
        }
    }
}

/// `sigma*(2l, i, j) = sum_h (-1)^h C(l, h) omega(2(l - h) + 1, i, j)`,
/// `sigma*(2l + 1, i, j) = sigma*(2l, i - 1, j) + sigma*(2l, i, j - 1) + sigma*(2l, i, j)`.
///
/// `omega` must cover lengths up to `2n + 1`.
pub fn sigma_star_from_omega(omega: &CountTable, n: usize) -> Result<CountTable, EngineError> {
    omega.expect_kind(TableKind::Omega)?;
    assert!(
        omega.layer_count() > 2 * n + 1,
        "omega table too short for sigma* over {n} vertices"
    );
    let mut sigma = CountTable::zeros(TableKind::SigmaStar, n);
    for ell in 0..=n {
        let s = 2 * ell;
        let binomials = binomial_row(ell);
        let bound = sigma.layers[s].bound;
        for i in 0..=bound {
            for j in 0..i.min(bound - i + 1) {
                let mut total = BigInt::zero();
                for (h, c) in binomials.iter().enumerate() {
                    let w = omega.get(2 * (ell - h) + 1, i, j);
                    if w.is_zero() {
                        continue;
                    }
                    let term = BigInt::from(c * w);
                    if h % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
                let value = total.to_biguint().ok_or(EngineError::Negative {
                    kind: TableKind::SigmaStar,
                    s,
                    i,
                    j,
                })?;
                sigma.set(s, i, j, value);
            }
        }
        if ell < n {
            let odd = s + 1;
            let bound = sigma.layers[odd].bound;
            for i in 0..=bound {
                for j in 0..i.min(bound - i + 1) {
                    let value = sigma.recurrence_value(odd, i, j).expect("odd step is a plain sum");
                    sigma.set(odd, i, j, value);
                }
            }
        }
    }
    Ok(sigma)
}

fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::from(1u32)];
    for k in 0..n {
        let next = &row[k] * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

/// Advances the constrained walk by one vertex: from the even layer `2l`,
/// returns layers `2l + 1` and `2l + 2`.
fn pair_step(even: &Layer, ell: usize) -> (Layer, Layer) {
    // Odd step: split by whether it was +e1.
    let odd_bound = TableKind::SigmaStar.layer_bound(2 * ell + 1);
    let mut after_e1 = Layer::new(odd_bound);
    let mut other = Layer::new(odd_bound);
    for i in 0..=odd_bound {
        for j in 0..i.min(odd_bound - i + 1) {
            let k = other.index(i, j).expect("in layout");
            let mut v = even.get(i, j).clone();
            if j > 0 {
                v += even.get(i, j - 1);
            }
            other.cells[k] = v;
            if i > 0 {
                after_e1.cells[k] = even.get(i - 1, j).clone();
            }
        }
    }
    let mut odd_layer = Layer::new(odd_bound);
    for (k, cell) in odd_layer.cells.iter_mut().enumerate() {
        *cell = &after_e1.cells[k] + &other.cells[k];
    }
    // Even step: any removal, except -e1 right after +e1.
    let even_bound = TableKind::SigmaStar.layer_bound(2 * ell + 2);
    let mut next = Layer::new(even_bound);
    for i in 0..=even_bound {
        for j in 0..i.min(even_bound - i + 1) {
            let k = next.index(i, j).expect("in layout");
            let mut v = odd_layer.get(i, j).clone();
            v += other.get(i + 1, j);
            v += odd_layer.get(i, j + 1);
            next.cells[k] = v;
        }
    }
    (odd_layer, next)
}

fn origin_layer() -> Layer {
    let mut layer = Layer::new(TableKind::SigmaStar.layer_bound(0));
    let k = layer.index(1, 0).expect("origin in layout");
    layer.cells[k] = BigUint::from(1u32);
    layer
}

/// Forward DP over the constrained walk.
pub fn sigma_star_direct(n: usize) -> CountTable {
    let mut sigma = CountTable::zeros(TableKind::SigmaStar, n);
    sigma.layers[0] = origin_layer();
    for ell in 0..n {
        let (odd, even) = pair_step(&sigma.layers[2 * ell], ell);
        sigma.layers[2 * ell + 1] = odd;
        sigma.layers[2 * ell + 2] = even;
    }
    sigma
}

/// `sigma*(2n, 1, 0)`, the number of 2-regular 3-noncrossing partitions of
/// `[n + 1]`, keeping one layer alive.
pub fn loop_free_count(n: usize, limit: SizeLimit) -> Result<BigUint, EngineError> {
    limit.check(n)?;
    let mut layer = origin_layer();
    for ell in 0..n {
        layer = pair_step(&layer, ell).1;
    }
    Ok(layer.get(1, 0).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::ensure_same;

    /// Brute force over braid walks, pairs at a time.
    fn brute_force(length_pairs: usize) -> std::collections::HashMap<(i64, i64), u64> {
        let mut out = std::collections::HashMap::new();
        fn go(a: i64, b: i64, left: usize, out: &mut std::collections::HashMap<(i64, i64), u64>) {
            if left == 0 {
                *out.entry((a, b)).or_insert(0) += 1;
                return;
            }
            for (oa, ob) in [(0, 0), (1, 0), (0, 1)] {
                let (x, y) = (a + oa, b + ob);
                if !(x > y && y >= 0) {
                    continue;
                }
                for (ea, eb) in [(0, 0), (-1, 0), (0, -1)] {
                    if (oa, ob, ea, eb) == (1, 0, -1, 0) {
                        continue;
                    }
                    let (u, v) = (x + ea, y + eb);
                    if u > v && v >= 0 {
                        go(u, v, left - 1, out);
                    }
                }
            }
        }
        go(1, 0, length_pairs, &mut out);
        out
    }

    #[test]
    fn examples() {
        let sigma = sigma_star_direct(3);
        assert_eq!(sigma.get(0, 1, 0), &BigUint::from(1u32));
        assert_eq!(sigma.get(2, 1, 0), &BigUint::from(1u32));
        // 2-regular 3-noncrossing partitions of [2], [3], [4].
        assert_eq!(sigma.get(2, 1, 0), &BigUint::from(1u32));
        assert_eq!(sigma.get(4, 1, 0), &BigUint::from(2u32));
        assert_eq!(sigma.get(6, 1, 0), &BigUint::from(5u32));
    }

    #[test]
    fn direct_matches_brute_force() {
        let sigma = sigma_star_direct(6);
        for pairs in 0..=6 {
            let counts = brute_force(pairs);
            for i in 0..9 {
                for j in 0..9 {
                    let expected = counts.get(&(i as i64, j as i64)).copied().unwrap_or(0);
                    assert_eq!(sigma.get(2 * pairs, i, j), &BigUint::from(expected));
                }
            }
        }
    }

    #[test]
    fn routes_agree() {
        for n in [0, 1, 2, 7, 14] {
            let ie = build_sigma_star(n, SigmaMethod::InclusionExclusion, SizeLimit::default()).unwrap();
            let dp = build_sigma_star(n, SigmaMethod::DirectDp, SizeLimit::default()).unwrap();
            ensure_same(&ie, &dp).unwrap();
            assert_eq!(dp.first_recurrence_violation(), None);
        }
    }

    #[test]
    fn streaming_count() {
        let sigma = sigma_star_direct(12);
        for n in 0..=12 {
            assert_eq!(&loop_free_count(n, SizeLimit::default()).unwrap(), sigma.get(2 * n, 1, 0));
        }
    }

    #[test]
    fn binomials() {
        let row: Vec<u32> = binomial_row(5).iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
    }
}

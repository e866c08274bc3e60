//! Quarter-plane walk counts and the chamber counts obtained from them by
//! reflection across the diagonal.

use num_bigint::BigUint;

use super::{CountTable, EngineError, Layer, SizeLimit, TableKind};

/// Fills `next` (layer `s`) from `prev` (layer `s - 1`) for partition walks
/// in the quarter plane: odd steps remove, even steps add.
fn advance(prev: &Layer, next: &mut Layer, s: usize) {
    let removing = s % 2 == 1;
    for i in 0..=next.bound {
        for j in 0..=next.bound - i {
            let (ii, jj) = (i as isize, j as isize);
            let mut v = prev.get(i, j).clone();
            if removing {
                v += prev.get(i + 1, j);
                v += prev.get(i, j + 1);
            } else {
                v += prev.get_signed(ii - 1, jj);
                v += prev.get_signed(ii, jj - 1);
            }
            let k = next.index(i, j).expect("in layout");
            next.cells[k] = v;
        }
    }
}

fn origin_layer() -> Layer {
    let mut layer = Layer::new(TableKind::A.layer_bound(0));
    let k = layer.index(1, 0).expect("origin in layout");
    layer.cells[k] = BigUint::from(1u32);
    layer
}

/// Quarter-plane partition walk counts `a(s, i, j)` for `s <= 2n`.
pub fn build_q2_table(n: usize, limit: SizeLimit) -> Result<CountTable, EngineError> {
    limit.check(n)?;
    let mut table = CountTable::zeros(TableKind::A, n);
    table.layers[0] = origin_layer();
    for s in 1..table.layers.len() {
        let (done, rest) = table.layers.split_at_mut(s);
        advance(&done[s - 1], &mut rest[0], s);
    }
    Ok(table)
}

fn reflect_layer(a: &Layer, omega: &mut Layer, s: usize) -> Result<(), EngineError> {
    for i in 0..=a.bound {
        for j in 0..i.min(a.bound - i + 1) {
            let here = a.get(i, j);
            let mirror = a.get(j, i);
            if here < mirror {
                return Err(EngineError::Negative {
                    kind: TableKind::Omega,
                    s,
                    i,
                    j,
                });
            }
            let k = omega.index(i, j).expect("same layout");
            omega.cells[k] = here - mirror;
        }
    }
    Ok(())
}

/// Chamber counts `omega(s, i, j) = a(s, i, j) - a(s, j, i)` for `i > j`.
pub fn build_omega_table(a: &CountTable) -> Result<CountTable, EngineError> {
    a.expect_kind(TableKind::A)?;
    let mut omega = CountTable::zeros(TableKind::Omega, a.n);
    for (s, layer) in a.layers.iter().enumerate() {
        reflect_layer(layer, &mut omega.layers[s], s)?;
    }
    Ok(omega)
}

/// Same as `build_omega_table(&build_q2_table(n)?)`, but keeps only two
/// quarter-plane layers alive at a time.
pub fn build_omega(n: usize, limit: SizeLimit) -> Result<CountTable, EngineError> {
    limit.check(n)?;
    let mut omega = CountTable::zeros(TableKind::Omega, n);
    let mut prev = origin_layer();
    reflect_layer(&prev, &mut omega.layers[0], 0)?;
    for s in 1..omega.layers.len() {
        let mut next = Layer::new(TableKind::A.layer_bound(s));
        advance(&prev, &mut next, s);
        reflect_layer(&next, &mut omega.layers[s], s)?;
        prev = next;
    }
    Ok(omega)
}

/// `omega(2n, 1, 0)`, the number of 3-noncrossing partitions of `[n]`,
/// keeping two quarter-plane layers alive.
pub fn chamber_count(n: usize, limit: SizeLimit) -> Result<BigUint, EngineError> {
    limit.check(n)?;
    let mut prev = origin_layer();
    for s in 1..=2 * n {
        let mut next = Layer::new(TableKind::A.layer_bound(s));
        advance(&prev, &mut next, s);
        prev = next;
    }
    Ok(prev.get(1, 0) - prev.get(0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Brute-force quarter-plane partition walks from (1,0).
    fn brute_force_endpoints(length: usize) -> HashMap<(i64, i64), u64> {
        let mut counts = HashMap::new();
        let mut stack = vec![(1i64, 0i64, 0usize)];
        while let Some((a, b, s)) = stack.pop() {
            if s == length {
                *counts.entry((a, b)).or_insert(0) += 1;
                continue;
            }
            let sign = if (s + 1) % 2 == 1 { -1 } else { 1 };
            for (da, db) in [(0, 0), (sign, 0), (0, sign)] {
                let (x, y) = (a + da, b + db);
                if x >= 0 && y >= 0 {
                    stack.push((x, y, s + 1));
                }
            }
        }
        counts
    }

    #[test]
    fn small_values() {
        let a = build_q2_table(3, SizeLimit::default()).unwrap();
        assert_eq!(a.get(0, 1, 0), &BigUint::from(1u32));
        assert_eq!(a.get(2, 1, 0), &BigUint::from(2u32));
        assert_eq!(a.get(3, 0, 0), &BigUint::from(4u32));
        assert_eq!(a.get(3, 1, 0), &BigUint::from(4u32));
        assert_eq!(a.get(3, 0, 1), &BigUint::from(2u32));

        let omega = build_omega_table(&a).unwrap();
        assert_eq!(omega.get(0, 1, 0), &BigUint::from(1u32));
        assert_eq!(omega.get(3, 1, 0), &BigUint::from(2u32));
    }

    #[test]
    fn matches_brute_force() {
        let a = build_q2_table(5, SizeLimit::default()).unwrap();
        for length in 0..=10 {
            let counts = brute_force_endpoints(length);
            for i in 0..8 {
                for j in 0..8 {
                    let expected = counts.get(&(i as i64, j as i64)).copied().unwrap_or(0);
                    assert_eq!(a.get(length, i, j), &BigUint::from(expected), "({length},{i},{j})");
                }
            }
        }
    }

    #[test]
    fn count_sequence() {
        let omega = build_omega(9, SizeLimit::default()).unwrap();
        let counts: Vec<u64> = (1..=9)
            .map(|n| omega.get(2 * n, 1, 0).try_into().unwrap())
            .collect();
        // 3-noncrossing partitions of [n]; 202 = Bell(6) - 1.
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 202, 859, 3930, 19095]);
    }

    #[test]
    fn chamber_count_reads_the_table() {
        let omega = build_omega(15, SizeLimit::default()).unwrap();
        for n in 0..=15 {
            assert_eq!(&chamber_count(n, SizeLimit::default()).unwrap(), omega.get(2 * n, 1, 0));
        }
    }

    #[test]
    fn streaming_equals_reflection() {
        let a = build_q2_table(12, SizeLimit::default()).unwrap();
        let omega = build_omega_table(&a).unwrap();
        assert_eq!(omega, build_omega(12, SizeLimit::default()).unwrap());
        assert_eq!(omega.first_recurrence_violation(), None);
        assert_eq!(a.first_recurrence_violation(), None);
    }

    #[test]
    fn reflection_is_nonnegative() {
        let a = build_q2_table(10, SizeLimit::default()).unwrap();
        for (s, i, j, v) in a.entries() {
            if i > j {
                assert!(v >= a.get(s, j, i));
            }
        }
        assert!(matches!(
            build_omega_table(&build_omega(2, SizeLimit::default()).unwrap()),
            Err(EngineError::WrongKind { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_omega(300, SizeLimit::default()),
            Err(EngineError::TooLarge { .. })
        ));
    }
}

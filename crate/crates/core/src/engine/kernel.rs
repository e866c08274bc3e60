//! The kernel-method route to the odd-length coefficients
//! `f(l, i, j) = a(2l + 1, i, j)`.
//!
//! The generating function `F(x, y; t) = sum f(l, i, j) x^i y^j t^l`
//! satisfies
//!
//! ```text
//! K(x, y; t) F(x, y; t) = xy + x^2 y + x^2 - x H(x; t) - y V(y; t),
//! K(x, y; t) = xy - t (1 + x + y)(x + y + xy),
//! ```
//!
//! where `H` and `V` count even walks ending on the axes. Substituting the
//! power-series root `Y0` of the kernel and separating positive from
//! negative powers of `x` gives the axis coefficients as finite signed sums
//! of `[x^0 t^s] x^l Y0^m`, which Lagrange inversion evaluates in closed form.
//! Axis cells of `f` then follow by alternating sums, and interior cells by
//! the coefficient recursion of the kernel equation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{q2, BigCount, BigSigned, CountTable, EngineError, SizeLimit, TableKind};

/// How to build the `f` table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FMethod {
    /// Read off the odd layers of the quarter-plane table.
    Direct,
    /// Lagrange-inversion boundaries plus the interior kernel recursion.
    KernelRecursion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Coefficients of `H(x; t)`, walks ending at `(i, 0)`.
    Horizontal,
    /// Coefficients of `V(y; t)`, walks ending at `(0, j)`.
    Vertical,
}

/// Pascal's triangle of big binomials, grown on demand.
#[derive(Debug, Default)]
struct Binomials {
    rows: Vec<Vec<BigUint>>,
}

impl Binomials {
    fn choose(&mut self, n: i64, k: i64) -> &BigUint {
        static ZERO: BigUint = BigUint::ZERO;
        if n < 0 || k < 0 || k > n {
            return &ZERO;
        }
        let n = n as usize;
        while self.rows.len() <= n {
            let next = match self.rows.last() {
                None => vec![BigUint::from(1u32)],
                Some(prev) => {
                    let mut row = Vec::with_capacity(prev.len() + 1);
                    row.push(BigUint::from(1u32));
                    row.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
                    row.push(BigUint::from(1u32));
                    row
                }
            };
            self.rows.push(next);
        }
        &self.rows[n][k as usize]
    }
}

/// Coefficient extraction through the kernel root, with binomials memoized
/// across calls.
#[derive(Debug, Default)]
pub struct KernelRoute {
    binomials: Binomials,
}

/// Signed monomials `coef * x^shift * Y0^power` of
/// `x^2 + (x^-2 + x + x^2) Y0 + (x^-3 - x^-1) Y0^2 - x^-2 Y0^3`.
const AXIS_SERIES: [(i64, i64, u32); 7] = [
    (1, 2, 0),
    (1, -2, 1),
    (1, 1, 1),
    (1, 2, 1),
    (1, -3, 2),
    (-1, -1, 2),
    (-1, -2, 3),
];

impl KernelRoute {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[x^0 t^s] x^ell Y0^m
    ///   = (m / s) sum_j C(s, j) C(s, j + m) C(2j + m, j - ell)`.
    pub fn lagrange_coeff(&mut self, ell: i64, m: u32, s: u32) -> Result<BigSigned, EngineError> {
        if s == 0 {
            return Err(EngineError::ZeroPower);
        }
        if m == 0 {
            return Ok(BigInt::zero());
        }
        let (si, mi) = (i64::from(s), i64::from(m));
        let mut sum = BigUint::zero();
        for j in 0..=si {
            let c1 = self.binomials.choose(si, j).clone();
            let c2 = self.binomials.choose(si, j + mi).clone();
            if c2.is_zero() {
                break;
            }
            let c3 = self.binomials.choose(2 * j + mi, j - ell);
            sum += c1 * c2 * c3;
        }
        let scaled = sum * m;
        let (quotient, remainder) = scaled.div_rem(&BigUint::from(s));
        if !remainder.is_zero() {
            return Err(EngineError::NonIntegral { ell, m, s });
        }
        Ok(BigInt::from_biguint(Sign::Plus, quotient))
    }

    /// `[x^index t^ell] H(x; t)` or `[y^index t^ell] V(y; t)`, i.e. the number
    /// of quarter-plane walks of length `2 ell` ending at `(index, 0)` or
    /// `(0, index)`.
    pub fn axis_coeff(&mut self, axis: Axis, index: usize, ell: usize) -> Result<BigCount, EngineError> {
        let offset = match axis {
            Axis::Horizontal => -(index as i64) - 1,
            Axis::Vertical => index as i64 + 1,
        };
        let mut total = BigInt::zero();
        for (coef, shift, power) in AXIS_SERIES {
            let q = offset + shift;
            let term = if ell == 0 {
                // Only the Y0-free monomial has a t^0 part.
                if power == 0 && q == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::zero()
                }
            } else {
                self.lagrange_coeff(q, power, ell as u32)?
            };
            if coef > 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        let (i, j) = match axis {
            Axis::Horizontal => (index, 0),
            Axis::Vertical => (0, index),
        };
        total.to_biguint().ok_or(EngineError::Negative {
            kind: TableKind::A,
            s: 2 * ell,
            i,
            j,
        })
    }

    /// `f(ell, i, j)` for a cell on an axis, as the alternating sum of axis
    /// coefficients at `t^(ell + 1)`.
    pub fn f_boundary(&mut self, i: usize, j: usize, ell: usize) -> Result<BigCount, EngineError> {
        let (axis, index) = match (i, j) {
            (i, 0) => (Axis::Horizontal, i),
            (0, j) => (Axis::Vertical, j),
            _ => return Err(EngineError::NotOnAxis { i, j }),
        };
        let mut total = BigInt::zero();
        for k in 0..=index {
            let c = BigInt::from(self.axis_coeff(axis, k, ell + 1)?);
            if (index - k) % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        if total.is_negative() {
            return Err(EngineError::Negative {
                kind: TableKind::F,
                s: ell,
                i,
                j,
            });
        }
        Ok(total.to_biguint().expect("nonnegative"))
    }
}

/// One-shot [`KernelRoute::lagrange_coeff`].
pub fn lagrange_coeff(ell: i64, m: u32, s: u32) -> Result<BigSigned, EngineError> {
    KernelRoute::new().lagrange_coeff(ell, m, s)
}

/// One-shot [`KernelRoute::axis_coeff`].
pub fn axis_coeff(axis: Axis, index: usize, ell: usize) -> Result<BigCount, EngineError> {
    KernelRoute::new().axis_coeff(axis, index, ell)
}

/// One-shot [`KernelRoute::f_boundary`].
pub fn f_boundary(i: usize, j: usize, ell: usize) -> Result<BigCount, EngineError> {
    KernelRoute::new().f_boundary(i, j, ell)
}

/// `f(l, i, j) = a(2l + 1, i, j)` read from a quarter-plane table.
pub fn f_from_q2(a: &CountTable) -> Result<CountTable, EngineError> {
    a.expect_kind(TableKind::A)?;
    let mut f = CountTable::zeros(TableKind::F, a.n);
    for ell in 0..f.layers.len() {
        let bound = f.layers[ell].bound;
        for i in 0..=bound {
            for j in 0..=bound - i {
                f.set(ell, i, j, a.get(2 * ell + 1, i, j).clone());
            }
        }
    }
    Ok(f)
}

/// The kernel route: level 0 from the single first step, axis cells from
/// Lagrange inversion, interior cells from
///
/// ```text
/// f(l,i,j) = f(l-1,i,j+1) + f(l-1,i+1,j) + 3 f(l-1,i,j) + f(l-1,i-1,j+1)
///          + f(l-1,i+1,j-1) + f(l-1,i-1,j) + f(l-1,i,j-1).
/// ```
pub fn f_kernel_route(n: usize, limit: SizeLimit) -> Result<CountTable, EngineError> {
    limit.check(n)?;
    let mut f = CountTable::zeros(TableKind::F, n);
    if n == 0 {
        return Ok(f);
    }
    // One removal step from (1, 0): stay, or drop to (0, 0).
    f.set(0, 1, 0, BigUint::from(1u32));
    f.set(0, 0, 0, BigUint::from(1u32));

    let mut route = KernelRoute::new();
    for ell in 1..f.layers.len() {
        let bound = f.layers[ell].bound;
        // Axis cells: f(l, i, 0) = H(i, l + 1) - f(l, i - 1, 0), the running
        // form of the alternating sum in `f_boundary`.
        let mut previous = BigInt::zero();
        for i in 0..=bound {
            let h = BigInt::from(route.axis_coeff(Axis::Horizontal, i, ell + 1)?);
            let value = h - &previous;
            let stored = value.to_biguint().ok_or(EngineError::Negative {
                kind: TableKind::F,
                s: ell,
                i,
                j: 0,
            })?;
            f.set(ell, i, 0, stored);
            previous = value;
        }
        let mut previous = BigInt::from(f.get(ell, 0, 0).clone());
        for j in 1..=bound {
            let v = BigInt::from(route.axis_coeff(Axis::Vertical, j, ell + 1)?);
            let value = v - &previous;
            let stored = value.to_biguint().ok_or(EngineError::Negative {
                kind: TableKind::F,
                s: ell,
                i: 0,
                j,
            })?;
            f.set(ell, 0, j, stored);
            previous = value;
        }
        for i in 1..bound {
            for j in 1..=bound - i {
                let value = f.recurrence_value(ell, i, j).expect("f recursion is a plain sum");
                f.set(ell, i, j, value);
            }
        }
    }
    Ok(f)
}

/// Builds the `f` table for a vertex budget `n` (levels `0..n`).
pub fn build_f_table(n: usize, method: FMethod, limit: SizeLimit) -> Result<CountTable, EngineError> {
    match method {
        FMethod::Direct => f_from_q2(&q2::build_q2_table(n, limit)?),
        FMethod::KernelRecursion => f_kernel_route(n, limit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_q2_table, ensure_same};
    use std::collections::BTreeMap;

    /// Laurent polynomial in x.
    type Poly = BTreeMap<i64, BigInt>;

    fn mul(p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::new();
        for (e1, c1) in p {
            for (e2, c2) in q {
                *out.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Power series in t with Laurent coefficients, truncated at `order`.
    type Series = Vec<Poly>;

    fn series_mul(p: &Series, q: &Series, order: usize) -> Series {
        let mut out = vec![Poly::new(); order + 1];
        for (a, pa) in p.iter().enumerate() {
            for (b, qb) in q.iter().enumerate() {
                if a + b > order {
                    continue;
                }
                for (e, c) in mul(pa, qb) {
                    *out[a + b].entry(e).or_default() += c;
                }
            }
        }
        for poly in &mut out {
            poly.retain(|_, c| !c.is_zero());
        }
        out
    }

    fn poly(terms: &[(i64, i64)]) -> Poly {
        terms.iter().map(|&(e, c)| (e, BigInt::from(c))).collect()
    }

    /// Y0 by fixed-point iteration of Y0 = t x^-1 (1 + x + Y0)(x + (1 + x) Y0).
    fn kernel_root(order: usize) -> Series {
        let mut y: Series = vec![Poly::new(); order + 1];
        for _ in 0..=order {
            let mut left = y.clone();
            for (e, c) in poly(&[(0, 1), (1, 1)]) {
                *left[0].entry(e).or_default() += c;
            }
            let mut right = series_mul(&vec![poly(&[(0, 1), (1, 1)])], &y, order);
            right.resize(order + 1, Poly::new());
            for (e, c) in poly(&[(1, 1)]) {
                *right[0].entry(e).or_default() += c;
            }
            let product = series_mul(&left, &right, order);
            let mut next = vec![Poly::new(); order + 1];
            for s in 0..order {
                next[s + 1] = product[s]
                    .iter()
                    .map(|(e, c)| (e - 1, c.clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
            y = next;
        }
        y
    }

    #[test]
    fn lagrange_matches_series_oracle() {
        let order = 6;
        let y = kernel_root(order);
        assert_eq!(y[1], poly(&[(0, 1), (1, 1)]));
        let mut power: Series = vec![poly(&[(0, 1)])];
        let mut route = KernelRoute::new();
        for m in 1..=3u32 {
            power = series_mul(&power, &y, order);
            for s in 1..=order {
                for ell in -8i64..=8 {
                    let expected = power
                        .get(s)
                        .and_then(|p| p.get(&(-ell)))
                        .cloned()
                        .unwrap_or_default();
                    assert_eq!(
                        route.lagrange_coeff(ell, m, s as u32).unwrap(),
                        expected,
                        "ell={ell} m={m} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn lagrange_examples() {
        assert!(lagrange_coeff(3, 0, 1).unwrap().is_zero());
        assert_eq!(lagrange_coeff(0, 1, 1).unwrap(), BigInt::from(1));
        assert_eq!(lagrange_coeff(-1, 1, 1).unwrap(), BigInt::from(1));
        assert!(matches!(lagrange_coeff(0, 1, 0), Err(EngineError::ZeroPower)));
    }

    #[test]
    fn axis_examples() {
        assert_eq!(axis_coeff(Axis::Horizontal, 1, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(axis_coeff(Axis::Horizontal, 1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(axis_coeff(Axis::Vertical, 1, 1).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn axis_identity() {
        let a = build_q2_table(16, SizeLimit::default()).unwrap();
        let mut route = KernelRoute::new();
        for ell in 0..=15 {
            for k in 0..=ell + 2 {
                assert_eq!(&route.axis_coeff(Axis::Horizontal, k, ell).unwrap(), a.get(2 * ell, k, 0));
                assert_eq!(&route.axis_coeff(Axis::Vertical, k, ell).unwrap(), a.get(2 * ell, 0, k));
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let a = build_q2_table(3, SizeLimit::default()).unwrap();
        assert_eq!(f_boundary(1, 0, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(f_boundary(0, 0, 1).unwrap(), BigUint::from(4u32));
        assert_eq!(&f_boundary(2, 0, 1).unwrap(), a.get(3, 2, 0));
        assert!(matches!(f_boundary(1, 1, 1), Err(EngineError::NotOnAxis { .. })));
        let f = build_f_table(8, FMethod::Direct, SizeLimit::default()).unwrap();
        let mut route = KernelRoute::new();
        for ell in 0..8 {
            for k in 0..=ell + 1 {
                assert_eq!(&route.f_boundary(k, 0, ell).unwrap(), f.get(ell, k, 0));
                assert_eq!(&route.f_boundary(0, k, ell).unwrap(), f.get(ell, 0, k));
            }
        }
    }

    #[test]
    fn level_zero_and_one() {
        let f = build_f_table(3, FMethod::KernelRecursion, SizeLimit::default()).unwrap();
        assert_eq!(f.get(0, 1, 0), &BigUint::from(1u32));
        assert_eq!(f.get(0, 0, 0), &BigUint::from(1u32));
        assert_eq!(f.get(1, 0, 0), &BigUint::from(4u32));
    }

    #[test]
    fn routes_agree() {
        for n in [1, 2, 5, 12] {
            let direct = build_f_table(n, FMethod::Direct, SizeLimit::default()).unwrap();
            let kernel = build_f_table(n, FMethod::KernelRecursion, SizeLimit::default()).unwrap();
            ensure_same(&direct, &kernel).unwrap();
            assert_eq!(direct.first_recurrence_violation(), None);
        }
    }
}

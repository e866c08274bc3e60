//! Exact walk-count tables.
//!
//! Every table is a stack of layers indexed by step count; layer `s` stores a
//! triangle of cells `(i, j)` with `i + j` bounded by the number of squares
//! that can have been added after `s` steps. Cells outside the triangle are
//! zero and never stored.
//!
//! | kind         | cell `(s, i, j)`                                            |
//! |--------------|-------------------------------------------------------------|
//! | `A`          | quarter-plane walks of length `s` ending at `(i, j)`        |
//! | `Omega`      | chamber walks (`i > j >= 0`) of length `s` ending at `(i, j)` |
//! | `F`          | `a(2s + 1, i, j)`, the kernel-equation coefficients         |
//! | `SigmaStar`  | loop-free braid walks of length `s` ending at `(i, j)`      |
//!
//! All walks start at `(1, 0)`.

mod cache;
mod kernel;
mod q2;
mod sigma;

pub use cache::{load_table, save_table, CacheError, CACHE_VERSION};
pub use kernel::{
    axis_coeff, build_f_table, f_boundary, f_from_q2, f_kernel_route, lagrange_coeff, Axis,
    FMethod, KernelRoute,
};
pub use q2::{build_omega, build_omega_table, build_q2_table, chamber_count};
pub use sigma::{build_sigma_star, loop_free_count, sigma_star_direct, sigma_star_from_omega, SigmaMethod};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;
/// Arbitrary-precision signed intermediate.
pub type BigSigned = BigInt;

static ZERO: BigUint = BigUint::ZERO;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    A,
    Omega,
    F,
    SigmaStar,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::A => "a",
            TableKind::Omega => "omega",
            TableKind::F => "f",
            TableKind::SigmaStar => "sigma_star",
        }
    }

    pub fn from_name(name: &str) -> Option<TableKind> {
        match name {
            "a" => Some(TableKind::A),
            "omega" => Some(TableKind::Omega),
            "f" => Some(TableKind::F),
            "sigma_star" => Some(TableKind::SigmaStar),
            _ => None,
        }
    }

    /// Number of layers stored for a vertex budget `n`.
    pub fn layer_count(self, n: usize) -> usize {
        match self {
            TableKind::F => n,
            _ => 2 * n + 1,
        }
    }

    /// Largest `i + j` reachable in layer `s`.
    pub fn layer_bound(self, s: usize) -> usize {
        match self {
            // Partition walks add on even steps only.
            TableKind::A | TableKind::Omega => 1 + s / 2,
            TableKind::F => 1 + s,
            // Braid walks add on odd steps.
            TableKind::SigmaStar => 1 + s.div_ceil(2),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("n = {n} exceeds the table size cap {cap}; pass --allow-large to override (about {bytes_estimate} bytes)")]
    TooLarge {
        n: usize,
        cap: usize,
        bytes_estimate: u64,
    },
    #[error("{kind} table: negative value at ({s},{i},{j})")]
    Negative {
        kind: TableKind,
        s: usize,
        i: usize,
        j: usize,
    },
    #[error("non-integral Lagrange coefficient for ell={ell}, m={m}, s={s}")]
    NonIntegral { ell: i64, m: u32, s: u32 },
    #[error("Lagrange coefficient needs s >= 1")]
    ZeroPower,
    #[error("{kind} tables disagree at ({s},{i},{j}): {left} vs {right}")]
    Mismatch {
        kind: TableKind,
        s: usize,
        i: usize,
        j: usize,
        left: BigUint,
        right: BigUint,
    },
    #[error("expected a {expected} table, got {found}")]
    WrongKind { expected: TableKind, found: TableKind },
    #[error("boundary cell ({i},{j}) is not on an axis")]
    NotOnAxis { i: usize, j: usize },
}

/// Refuses tables whose vertex budget would need excessive memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeLimit {
    pub max_n: usize,
}

impl SizeLimit {
    pub const DEFAULT_MAX_N: usize = 256;

    pub fn unbounded() -> Self {
        SizeLimit { max_n: usize::MAX }
    }

    pub fn check(&self, n: usize) -> Result<(), EngineError> {
        if n > self.max_n {
            return Err(EngineError::TooLarge {
                n,
                cap: self.max_n,
                bytes_estimate: estimated_bytes(n),
            });
        }
        Ok(())
    }
}

impl Default for SizeLimit {
    fn default() -> Self {
        SizeLimit {
            max_n: Self::DEFAULT_MAX_N,
        }
    }
}

/// Rough resident size of an omega table for budget `n`: about `n^3 / 3`
/// cells, each a vector header plus `~3.2 n` bits of digits.
pub fn estimated_bytes(n: usize) -> u64 {
    let n = n as u64;
    let cells = n.saturating_pow(3) / 3 + 1;
    let digits = (n * 16 / 5).div_ceil(64) * 8;
    cells.saturating_mul(24 + digits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Layer {
    bound: usize,
    cells: Vec<BigUint>,
}

impl Layer {
    fn new(bound: usize) -> Self {
        Layer {
            bound,
            cells: vec![BigUint::zero(); (bound + 1) * (bound + 2) / 2],
        }
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        if i + j > self.bound {
            return None;
        }
        let d = self.bound;
        Some(i * (d + 1) - i * i.saturating_sub(1) / 2 + j)
    }

    fn get(&self, i: usize, j: usize) -> &BigUint {
        match self.index(i, j) {
            Some(k) => &self.cells[k],
            None => &ZERO,
        }
    }

    fn get_signed(&self, i: isize, j: isize) -> &BigUint {
        if i < 0 || j < 0 {
            &ZERO
        } else {
            self.get(i as usize, j as usize)
        }
    }
}

/// A walk-count table. See the module docs for what each kind stores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    kind: TableKind,
    n: usize,
    layers: Vec<Layer>,
}

impl CountTable {
    /// An all-zero table with the layer layout of `kind`.
    pub fn zeros(kind: TableKind, n: usize) -> Self {
        let layers = (0..kind.layer_count(n))
            .map(|s| Layer::new(kind.layer_bound(s)))
            .collect();
        CountTable { kind, n, layers }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_bound(&self, s: usize) -> usize {
        self.layers[s].bound
    }

    /// The stored value, zero outside the table.
    pub fn get(&self, s: usize, i: usize, j: usize) -> &BigUint {
        match self.layers.get(s) {
            Some(layer) => layer.get(i, j),
            None => &ZERO,
        }
    }

    pub(crate) fn get_signed(&self, s: usize, i: isize, j: isize) -> &BigUint {
        match self.layers.get(s) {
            Some(layer) => layer.get_signed(i, j),
            None => &ZERO,
        }
    }

    /// Overwrites a cell. Panics if `(s, i, j)` lies outside the layout.
    pub fn set(&mut self, s: usize, i: usize, j: usize, value: BigUint) {
        let layer = &mut self.layers[s];
        let k = layer
            .index(i, j)
            .unwrap_or_else(|| panic!("cell ({s},{i},{j}) outside {} table", self.kind));
        layer.cells[k] = value;
    }

    pub fn contains(&self, s: usize, i: usize, j: usize) -> bool {
        self.layers.get(s).is_some_and(|l| l.index(i, j).is_some())
    }

    /// Nonzero cells in `(s, i, j)` lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &BigUint)> + '_ {
        self.layers.iter().enumerate().flat_map(|(s, layer)| {
            (0..=layer.bound).flat_map(move |i| {
                (0..=layer.bound - i).filter_map(move |j| {
                    let v = layer.get(i, j);
                    (!v.is_zero()).then_some((s, i, j, v))
                })
            })
        })
    }

    pub fn entry_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.cells.iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    pub(crate) fn expect_kind(&self, expected: TableKind) -> Result<(), EngineError> {
        if self.kind != expected {
            return Err(EngineError::WrongKind {
                expected,
                found: self.kind,
            });
        }
        Ok(())
    }

    /// The value the defining recurrence of this kind predicts for a cell,
    /// computed from earlier layers. `None` for negative predictions (only
    /// possible in a corrupted loop-free table).
    pub fn recurrence_value(&self, s: usize, i: usize, j: usize) -> Option<BigUint> {
        let (ii, jj) = (i as isize, j as isize);
        let base = |hit: bool| {
            Some(if hit {
                BigUint::from(1u32)
            } else {
                BigUint::zero()
            })
        };
        let sum = |layer: usize, cells: &[(isize, isize)]| -> BigUint {
            cells
                .iter()
                .map(|&(x, y)| self.get_signed(layer, x, y))
                .sum()
        };
        match self.kind {
            TableKind::A | TableKind::Omega => {
                if self.kind == TableKind::Omega && i <= j {
                    return base(false);
                }
                if s == 0 {
                    return base((i, j) == (1, 0));
                }
                let sources = if s % 2 == 1 {
                    [(ii + 1, jj), (ii, jj + 1), (ii, jj)]
                } else {
                    [(ii - 1, jj), (ii, jj - 1), (ii, jj)]
                };
                Some(sum(s - 1, &sources))
            }
            TableKind::F => {
                if s == 0 {
                    return base((i, j) == (1, 0) || (i, j) == (0, 0));
                }
                let mut total = sum(
                    s - 1,
                    &[
                        (ii, jj + 1),
                        (ii + 1, jj),
                        (ii - 1, jj + 1),
                        (ii + 1, jj - 1),
                        (ii - 1, jj),
                        (ii, jj - 1),
                    ],
                );
                total += self.get(s - 1, i, j) * 3u32;
                Some(total)
            }
            TableKind::SigmaStar => {
                if i <= j {
                    return base(false);
                }
                if s == 0 {
                    return base((i, j) == (1, 0));
                }
                if s % 2 == 1 {
                    return Some(sum(s - 1, &[(ii - 1, jj), (ii, jj - 1), (ii, jj)]));
                }
                // Every removal from the previous odd layer, minus the
                // forbidden +e1/-e1 pair which returns to the same cell.
                let all = sum(s - 1, &[(ii, jj), (ii + 1, jj), (ii, jj + 1)]);
                let forbidden = self.get(s - 2, i, j);
                (all >= *forbidden).then(|| all - forbidden)
            }
        }
    }

    /// Checks the defining recurrence on every stored cell and returns the
    /// first violation.
    pub fn first_recurrence_violation(&self) -> Option<(usize, usize, usize)> {
        for (s, layer) in self.layers.iter().enumerate() {
            for i in 0..=layer.bound {
                for j in 0..=layer.bound - i {
                    if self.recurrence_value(s, i, j).as_ref() != Some(layer.get(i, j)) {
                        return Some((s, i, j));
                    }
                }
            }
        }
        None
    }
}

/// First cell where two tables of the same kind differ.
pub fn first_difference(left: &CountTable, right: &CountTable) -> Option<(usize, usize, usize)> {
    let layers = left.layers.len().max(right.layers.len());
    for s in 0..layers {
        let bound = left
            .layers
            .get(s)
            .map_or(0, |l| l.bound)
            .max(right.layers.get(s).map_or(0, |l| l.bound));
        for i in 0..=bound {
            for j in 0..=bound - i {
                if left.get(s, i, j) != right.get(s, i, j) {
                    return Some((s, i, j));
                }
            }
        }
    }
    None
}

/// Fails with the first differing cell if the tables disagree.
pub fn ensure_same(left: &CountTable, right: &CountTable) -> Result<(), EngineError> {
    if left.kind != right.kind {
        return Err(EngineError::WrongKind {
            expected: left.kind,
            found: right.kind,
        });
    }
    match first_difference(left, right) {
        None => Ok(()),
        Some((s, i, j)) => Err(EngineError::Mismatch {
            kind: left.kind,
            s,
            i,
            j,
            left: left.get(s, i, j).clone(),
            right: right.get(s, i, j).clone(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_indexing_is_dense() {
        let layer = Layer::new(4);
        let mut seen = vec![false; layer.cells.len()];
        for i in 0..=4 {
            for j in 0..=4 - i {
                let k = layer.index(i, j).unwrap();
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
        assert!(seen.into_iter().all(|x| x));
        assert_eq!(layer.index(3, 2), None);
    }

    #[test]
    fn out_of_range_reads_are_zero() {
        let t = CountTable::zeros(TableKind::A, 2);
        assert!(t.get(99, 0, 0).is_zero());
        assert!(t.get(0, 50, 50).is_zero());
        assert!(t.get_signed(1, -1, 0).is_zero());
    }

    #[test]
    fn size_limit() {
        assert!(SizeLimit::default().check(256).is_ok());
        let err = SizeLimit::default().check(257).unwrap_err();
        assert!(err.to_string().contains("--allow-large"));
        assert!(SizeLimit::unbounded().check(10_000).is_ok());
    }
}

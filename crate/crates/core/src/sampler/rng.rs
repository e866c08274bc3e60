//! Seeded random source with exact uniform draws below big bounds.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifies the generator in output headers and docs. Changing the
/// algorithm changes every seeded sample.
pub const RNG_ALGORITHM: &str = "chacha8";

/// ChaCha8 keyed from a 64-bit seed, counting 64-bit chunks consumed.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    position: u64,
    inner: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream {
            seed,
            position: 0,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 64-bit chunks drawn so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn next_u64(&mut self) -> u64 {
        self.position += 1;
        self.inner.next_u64()
    }

    /// Uniform integer in `[0, bound)` by rejection: draw just enough
    /// 64-bit chunks to cover `bound.bits()`, mask the excess, retry while
    /// the candidate is too large. Panics on a zero bound.
    pub fn uniform_below(&mut self, bound: &BigUint) -> BigUint {
        assert!(bound.bits() > 0, "uniform_below(0)");
        let bits = bound.bits();
        let chunks = bits.div_ceil(64) as usize;
        let spare = (chunks as u64) * 64 - bits;
        let mask = u64::MAX >> spare;
        let mut digits = vec![0u32; 2 * chunks];
        loop {
            for k in 0..chunks {
                let mut d = self.next_u64();
                if k == chunks - 1 {
                    d &= mask;
                }
                digits[2 * k] = d as u32;
                digits[2 * k + 1] = (d >> 32) as u32;
            }
            let candidate = BigUint::from_slice(&digits);
            if &candidate < bound {
                return candidate;
            }
        }
    }

    /// Uniform integer in `[0, bound)` for machine-sized bounds.
    pub fn uniform_below_u64(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "uniform_below_u64(0)");
        let bits = 64 - (bound - 1).leading_zeros();
        let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        loop {
            let candidate = self.next_u64() & mask;
            if candidate < bound {
                return candidate;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomStream::new(42);
        let mut b = RandomStream::new(42);
        let bound = BigUint::from(10u32).pow(40);
        for _ in 0..100 {
            assert_eq!(a.uniform_below(&bound), b.uniform_below(&bound));
        }
        assert_eq!(a.position(), b.position());
        assert_ne!(RandomStream::new(1).next_u64(), RandomStream::new(2).next_u64());
    }

    #[test]
    fn draws_stay_below_bound() {
        let mut rng = RandomStream::new(3);
        for bound in [1u64, 2, 3, 7, 64, 65, 1 << 40, u64::MAX] {
            for _ in 0..200 {
                assert!(rng.uniform_below_u64(bound) < bound);
                assert!(rng.uniform_below(&BigUint::from(bound)) < BigUint::from(bound));
            }
        }
        let big = (BigUint::from(1u32) << 130u32) + 5u32;
        for _ in 0..200 {
            assert!(rng.uniform_below(&big) < big);
        }
    }

    #[test]
    fn small_bound_is_roughly_uniform() {
        let mut rng = RandomStream::new(9);
        let mut counts = [0u32; 3];
        let bound = BigUint::from(3u32);
        for _ in 0..30_000 {
            let x: usize = rng.uniform_below(&bound).try_into().unwrap();
            counts[x] += 1;
        }
        for c in counts {
            assert!((9_500..=10_500).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn chunk_count_is_minimal() {
        let mut rng = RandomStream::new(0);
        rng.uniform_below(&(BigUint::from(1u32) << 64u32));
        // 2^64 needs 65 bits, so two chunks per attempt.
        assert_eq!(rng.position() % 2, 0);
        let mut rng = RandomStream::new(0);
        rng.uniform_below(&BigUint::from(u64::MAX));
        assert!(rng.position() >= 1);
    }
}

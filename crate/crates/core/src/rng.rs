//! Portable seeded randomness for schedule generation.
//!
//! The stream is ChaCha8 keyed through `SeedableRng::seed_from_u64` (PCG32
//! seed expansion), both fixed by their published definitions. Bounded draws
//! use rejection sampling on raw `u64` words: `x` is accepted when
//! `x < n * floor(2^64 / n)` and mapped to `x % n`. Nothing here depends on
//! platform word size or on a distribution implementation that may change
//! between library releases, so another implementation following these
//! three steps reproduces a schedule exactly.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct ScheduleRng {
    inner: ChaCha8Rng,
}

impl ScheduleRng {
    pub fn new(seed: u64) -> Self {
        ScheduleRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = (u64::MAX / n) * n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }
}

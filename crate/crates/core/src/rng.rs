//! SplitMix64, the deterministic generator behind every randomized routine.
//!
//! The stream is fixed bit for bit so that seeds in published reports can be
//! replayed by any implementation:
//!
//! ```text
//! state  <- state + 0x9E3779B97F4A7C15            (wrapping)
//! z      <- state
//! z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (wrapping)
//! z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB  (wrapping)
//! output <- z ^ (z >> 31)
//! ```
//!
//! `below(b)` draws outputs until one is `< b * floor((2^64 - 1) / b)` and
//! returns it mod `b`. Independent streams for parallel work use
//! [`Rng::derived`]`(seed, index)`, i.e. a fresh generator seeded with
//! `seed + index` (wrapping).

use serde::{Deserialize, Serialize};

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rng {
    seed: u64,
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self { seed, state: seed }
    }

    /// Generator for sub-stream `index` of `seed`.
    pub fn derived(seed: u64, index: u64) -> Self {
        Self::new(seed.wrapping_add(index))
    }

    /// The seed this generator started from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)`. Panics on `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = (u64::MAX / bound) * bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn below_usize(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// A new generator seeded from this one's next output.
    pub fn split(&mut self) -> Rng {
        Rng::new(self.next_u64())
    }
}

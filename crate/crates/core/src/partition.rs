//! The random tape: a seeded, order-independent element → machine map.

use serde::{Deserialize, Serialize};

use crate::oracle::GroundSet;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output mix.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTape {
    seed: u64,
    machines: usize,
}

impl RandomTape {
    pub fn new(seed: u64, machines: usize) -> Self {
        assert!(machines >= 1, "a tape needs at least one machine");
        RandomTape { seed, machines }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    /// Machine holding element `e`.
    pub fn assign(&self, e: usize) -> usize {
        let h = splitmix64(self.seed ^ (e as u64).wrapping_mul(GOLDEN_GAMMA));
        (h % self.machines as u64) as usize
    }

    /// Splits `elements` across the machines. Each part is sorted.
    pub fn split(&self, elements: &[usize]) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.machines];
        for &e in elements {
            parts[self.assign(e)].push(e);
        }
        for p in &mut parts {
            p.sort_unstable();
            p.dedup();
        }
        parts
    }
}

/// Partition of the whole ground set.
pub fn partition(ground: &GroundSet, tape: &RandomTape) -> Vec<Vec<usize>> {
    let all: Vec<usize> = ground.indices().collect();
    tape.split(&all)
}

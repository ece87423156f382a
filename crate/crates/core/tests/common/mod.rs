#![allow(dead_code)]

use ovass_core::gen::{random_vass, RandomParams};
use ovass_core::{StateId, Vass};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn build(seed: u64, p: &RandomParams) -> Vass {
    random_vass(&mut ChaCha8Rng::seed_from_u64(seed), p)
}

/// Normalized guarded instances with up to `max` states.
pub fn guarded(max: usize) -> impl Strategy<Value = Vass> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| build(seed, &RandomParams::guarded(n)))
}

/// Instances whose states may carry several guards.
pub fn multi_guarded(max: usize) -> impl Strategy<Value = Vass> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        let mut p = RandomParams::guarded(n);
        p.max_guards = 3;
        build(seed, &p)
    })
}

pub fn guard_free(max: usize) -> impl Strategy<Value = Vass> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| build(seed, &RandomParams::guard_free(n)))
}

/// Iterates the weights and guards of `states` (a closed cycle starting and
/// ending at the same state) from counter `z`; returns false on the first
/// invalid configuration.
pub fn iterate_cycle(v: &Vass, states: &[StateId], weights: &[i64], mut z: i64, times: usize) -> bool {
    if !v.allows(states[0], z) {
        return false;
    }
    for _ in 0..times {
        for (i, w) in weights.iter().enumerate() {
            z += w;
            if !v.allows(states[i + 1], z) {
                return false;
            }
        }
    }
    true
}

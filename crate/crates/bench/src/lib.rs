//! Deterministic instance suites shared by the benchmarks.

use ovass_core::gen::{random_vass, RandomParams};
use ovass_core::reductions::{cnf_to_vass, random_cnf, with_start_counter};
use ovass_core::{normalize_guards, StateId, Vass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` normalized guarded instances with `n` states each.
pub fn guarded_suite(n: usize, count: usize, seed: u64) -> Vec<Vass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| normalize_guards(&random_vass(&mut rng, &RandomParams::guarded(n))).expect("generated instance"))
        .collect()
}

/// `count` guard-free instances with `n` states each.
pub fn guard_free_suite(n: usize, count: usize, seed: u64) -> Vec<Vass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_vass(&mut rng, &RandomParams::guard_free(n)))
        .collect()
}

/// The CNF instance of a random formula, started from counter `u`.
pub fn cnf_instance(vars: usize, clauses: usize, seed: u64, u: i64) -> (Vass, StateId) {
    let f = random_cnf(vars, clauses, seed).expect("valid formula size");
    let (v, _) = cnf_to_vass(&f).expect("small formula");
    let s0 = v.state("s0").expect("start state");
    with_start_counter(&v, s0, u).expect("nonnegative counter")
}

//! Seeded random instances for tests and benchmarks.

use rand::Rng;

use crate::model::{StateId, Vass};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub states: usize,
    /// Expected out-degree.
    pub degree: f64,
    /// Weights are drawn from `[-max_weight, max_weight]`.
    pub max_weight: i64,
    pub guard_prob: f64,
    /// Guards are drawn from `[0, guard_bound)`.
    pub guard_bound: i64,
    pub max_guards: usize,
}

impl RandomParams {
    pub fn guarded(states: usize) -> Self {
        RandomParams {
            states,
            degree: 1.8,
            max_weight: 5,
            guard_prob: 0.5,
            guard_bound: 50,
            max_guards: 1,
        }
    }

    pub fn guard_free(states: usize) -> Self {
        RandomParams {
            guard_prob: 0.0,
            ..Self::guarded(states)
        }
    }
}

/// States `q0..`, initial `q0`, target the last state.
pub fn random_vass<R: Rng>(rng: &mut R, p: &RandomParams) -> Vass {
    let n = p.states.max(1);
    let mut v = Vass::new();
    for i in 0..n {
        let mut guards = Vec::new();
        if p.guard_bound > 0 && rng.gen_bool(p.guard_prob.clamp(0.0, 1.0)) {
            let k = rng.gen_range(1..=p.max_guards.max(1));
            guards.extend((0..k).map(|_| rng.gen_range(0..p.guard_bound)));
        }
        v.add_state(&format!("q{i}"), guards).expect("fresh name");
    }
    let edge_prob = (p.degree / n as f64).clamp(0.0, 1.0);
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(edge_prob) {
                let w = rng.gen_range(-p.max_weight..=p.max_weight);
                v.add_transition(StateId(a), StateId(b), w).expect("states exist");
            }
        }
    }
    v.set_initial(Some(StateId(0))).expect("state exists");
    v.set_target(Some(StateId(n - 1))).expect("state exists");
    v
}

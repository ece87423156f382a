mod common;

use std::collections::BTreeSet;

use ovass_core::cycles::select_cycle;
use ovass_core::{blocked_omega, CycleAnalysis, StateId, Vass};
use proptest::prelude::*;

/// For every state, the best pmin over positive closed walks of length at
/// most `|Q|` through it, and whether some positive simple cycle passes
/// through it, by exhaustive enumeration.
fn brute_force_cycles(v: &Vass) -> (Vec<Option<i64>>, BTreeSet<StateId>) {
    #[allow(clippy::too_many_arguments)]
    fn walk(
        v: &Vass,
        start: StateId,
        at: StateId,
        len: usize,
        acc: i64,
        pmin: i64,
        visited: &mut Vec<StateId>,
        best: &mut Option<i64>,
        simple: &mut BTreeSet<StateId>,
    ) {
        if len == v.num_states() {
            return;
        }
        for &t in v.outgoing(at) {
            let tr = v.transition(t);
            let (acc, pmin) = (acc + tr.weight, pmin.min(acc + tr.weight));
            if tr.dst == start && acc > 0 {
                *best = Some(best.map_or(pmin, |b| b.max(pmin)));
                let distinct: BTreeSet<StateId> = visited.iter().copied().collect();
                if distinct.len() == visited.len() {
                    simple.extend(distinct);
                }
            }
            visited.push(tr.dst);
            walk(v, start, tr.dst, len + 1, acc, pmin, visited, best, simple);
            visited.pop();
        }
    }
    let mut best = vec![None; v.num_states()];
    let mut simple = BTreeSet::new();
    for q in v.states() {
        walk(v, q, q, 0, 0, 0, &mut vec![q], &mut best[q.0], &mut simple);
    }
    (best, simple)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn q_plus_matches_closed_walks(v in common::guarded(8)) {
        let a = CycleAnalysis::new(&v).unwrap();
        let (best, simple) = brute_force_cycles(&v);
        let q_plus: BTreeSet<StateId> = a.q_plus().collect();
        let walks: BTreeSet<StateId> = v.states().filter(|q| best[q.0].is_some()).collect();
        prop_assert_eq!(&q_plus, &walks);
        prop_assert!(simple.is_subset(&q_plus));
        for q in a.q_plus() {
            let sel = &a.get(q).unwrap().selection;
            prop_assert_eq!(sel.pmin, best[q.0].unwrap());
            prop_assert!(sel.period >= 1);
            prop_assert!(sel.gamma.len() <= v.num_states());
            prop_assert_eq!(sel.gamma.start(), q);
            prop_assert_eq!(sel.gamma.end(&v), q);
            prop_assert_eq!(sel.gamma.weights(&v).sum::<i64>(), sel.period);
        }
    }

    #[test]
    fn blocked_omega_matches_iteration(v in common::guarded(6)) {
        let n = v.num_states() as i64;
        for q in v.states() {
            let Some(sel) = select_cycle(&v, q).unwrap() else { continue };
            let blocked = blocked_omega(&v, &sel).unwrap();
            let states = sel.gamma.states(&v);
            let ws: Vec<i64> = sel.gamma.weights(&v).collect();
            let times = (2 * n * (v.max_guard() + sel.gamma.len() as i64 * v.max_abs_weight() + 1)) as usize;
            for z in 0..v.max_guard() + 2 * sel.period + 10 {
                let survives = common::iterate_cycle(&v, &states, &ws, z, times);
                prop_assert_eq!(survives, !blocked.contains(z), "q={:?} z={}", q, z);
            }
        }
    }

    #[test]
    fn chains_partition_classes(v in common::guarded(7)) {
        let a = CycleAnalysis::new(&v).unwrap();
        let n = v.num_states();
        for q in a.q_plus() {
            let sc = a.get(q).unwrap();
            let sel = &sc.selection;
            let states = sel.gamma.states(&v);
            let ws: Vec<i64> = sel.gamma.weights(&v).collect();
            for r in 0..sel.period {
                let chains = sc.chains(r);
                prop_assert_eq!(chains.iter().filter(|c| c.hi.is_none()).count(), 1);
                prop_assert!(chains.last().unwrap().hi.is_none());
                prop_assert!(chains.len() - 1 <= 2 * n);
                prop_assert_eq!(chains.len() == 1, sc.is_trivial(r));
                let mut next = sel.floor(r);
                for c in &chains {
                    prop_assert_eq!(c.lo, next);
                    prop_assert_eq!(c.lo.rem_euclid(sel.period), r);
                    match c.hi {
                        Some(hi) => {
                            prop_assert!(hi >= c.lo);
                            for z in c.elements() {
                                let step = common::iterate_cycle(&v, &states, &ws, z, 1);
                                if z < hi {
                                    prop_assert!(step, "q={:?} z={}", q, z);
                                }
                                if sc.roots.contains(&z) {
                                    prop_assert!(!step, "q={:?} root z={}", q, z);
                                    prop_assert_eq!(c.lo, c.hi.unwrap());
                                }
                            }
                            next = hi + sel.period;
                        }
                        None => {
                            let times = 2 * n * (v.max_guard() as usize + 1);
                            prop_assert!(common::iterate_cycle(&v, &states, &ws, c.lo, times));
                        }
                    }
                }
            }
        }
    }
}

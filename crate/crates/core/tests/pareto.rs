mod common;

use ovass_core::oracle::{oracle_cover, oracle_unbounded};
use ovass_core::pareto::{build_family_levels, concat, dominates, pareto_filter};
use ovass_core::summary::summarize_weights;
use ovass_core::{decide_cover_pareto, decide_unbounded_lasso, lift_run, Caps, ParetoElem, Path, StateId, Vass};
use proptest::prelude::*;

fn summary_triple() -> impl Strategy<Value = [Vec<i64>; 3]> {
    let w = || proptest::collection::vec(-6i64..=6, 0..6);
    (w(), w(), w()).prop_map(|(a, b, c)| [a, b, c])
}

/// All paths from `p` of at most `max_len` transitions.
fn paths_from(v: &Vass, p: StateId, max_len: usize) -> Vec<Path> {
    let mut out = vec![Path::empty(p)];
    let mut i = 0;
    while i < out.len() {
        let path = out[i].clone();
        i += 1;
        if path.len() == max_len {
            continue;
        }
        for &t in v.outgoing(path.end(v)) {
            let mut edges = path.edges().to_vec();
            edges.push(t);
            out.push(Path::new(v, p, edges).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn domination_is_a_preorder(ws in summary_triple()) {
        let [a, b, c] = ws.map(|w| summarize_weights(w).unwrap());
        prop_assert!(a.dominates(&a));
        if a.dominates(&b) && b.dominates(&c) {
            prop_assert!(a.dominates(&c));
        }
    }

    #[test]
    fn concat_is_associative_with_identity(v in common::guard_free(5), seed in any::<u64>()) {
        let q = StateId(seed as usize % v.num_states());
        let paths = paths_from(&v, q, 3);
        let a = ParetoElem::from_path(&v, paths[seed as usize % paths.len()].clone()).unwrap();
        let mid = a.end(&v);
        let b_paths = paths_from(&v, mid, 3);
        let b = ParetoElem::from_path(&v, b_paths[(seed >> 8) as usize % b_paths.len()].clone()).unwrap();
        let c_paths = paths_from(&v, b.end(&v), 3);
        let c = ParetoElem::from_path(&v, c_paths[(seed >> 16) as usize % c_paths.len()].clone()).unwrap();
        let left = concat(&v, &concat(&v, &a, &b).unwrap(), &c).unwrap();
        let right = concat(&v, &a, &concat(&v, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(ParetoElem::from_path(&v, left.witness.clone()).unwrap(), left);
        let id = ParetoElem::from_path(&v, Path::empty(a.start())).unwrap();
        prop_assert_eq!(concat(&v, &id, &a).unwrap(), a.clone());
        let id = ParetoElem::from_path(&v, Path::empty(mid)).unwrap();
        prop_assert_eq!(concat(&v, &a, &id).unwrap(), a);
    }

    #[test]
    fn filter_output_is_small_and_dominating(v in common::guard_free(6), p in 0usize..6, q in 0usize..6) {
        let n = v.num_states();
        let (p, q) = (StateId(p % n), StateId(q % n));
        let input: Vec<ParetoElem> = paths_from(&v, p, n)
            .into_iter()
            .filter(|x| x.end(&v) == q)
            .map(|x| ParetoElem::from_path(&v, x).unwrap())
            .collect();
        let out = pareto_filter(&v, &input).unwrap();
        prop_assert!(out.len() <= n);
        let longest = input.iter().map(|e| e.witness.len()).max().unwrap_or(0);
        for e in &out {
            prop_assert!(e.witness.len() <= 2 * longest);
            prop_assert_eq!(e.start(), p);
            prop_assert_eq!(e.end(&v), q);
        }
        for e in &input {
            prop_assert!(out.iter().any(|o| dominates(o, e)));
        }
    }

    #[test]
    fn family_levels_bound_witnesses(v in common::guard_free(6)) {
        let levels = build_family_levels(&v, false).unwrap();
        for (k, fam) in levels.iter().enumerate() {
            prop_assert!(fam.max_cell() <= v.num_states());
            prop_assert!(fam.max_witness_len() <= 4usize.pow(k as u32));
        }
        let par = build_family_levels(&v, true).unwrap();
        for (a, b) in levels.iter().zip(&par) {
            for p in v.states() {
                for q in v.states() {
                    prop_assert_eq!(a.cell(p, q), b.cell(p, q));
                }
            }
        }
    }

    #[test]
    fn lasso_agrees_with_oracle(v in common::guard_free(6)) {
        let s = StateId(0);
        let lasso = decide_unbounded_lasso(&v, s).unwrap();
        if let Some(expect) = oracle_unbounded(&v, s, Caps::default_for(&v)).unwrap().answer.definite() {
            prop_assert_eq!(lasso.is_some(), expect);
        }
        if let Some(l) = lasso {
            prop_assert_eq!(l.stem.start(), s);
            prop_assert_eq!(l.cycle.start(), l.stem.end(&v));
            prop_assert_eq!(l.cycle.end(&v), l.cycle.start());
            prop_assert!(l.cycle.weights(&v).sum::<i64>() >= 1);
            let run = l.stem.concat(&v, &l.cycle).unwrap().concat(&v, &l.cycle).unwrap();
            prop_assert!(lift_run(&v, &run, 0).unwrap().is_ok());
        }
    }

    #[test]
    fn pareto_cover_agrees_with_oracle(v in common::guard_free(6)) {
        let (s, t) = (StateId(0), StateId(v.num_states() - 1));
        if let Some(expect) = oracle_cover(&v, s, t, Caps::default_for(&v)).unwrap().answer.definite() {
            prop_assert_eq!(decide_cover_pareto(&v, s, t).unwrap(), expect);
        }
    }
}

mod common;

use std::collections::BTreeSet;

use ovass_core::normalize::normalize_guards_with_map;
use ovass_core::oracle::oracle_unbounded;
use ovass_core::{parse_vass, serialize_vass, Caps, Configuration, StateId};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_then_parse_is_identity(v in common::multi_guarded(8)) {
        let text = serialize_vass(&v);
        let back = parse_vass(&text).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(serialize_vass(&back), text);
    }

    #[test]
    fn normalization_preserves_unboundedness(v in common::multi_guarded(5)) {
        let norm = normalize_guards_with_map(&v).unwrap();
        prop_assert!(norm.vass.is_normalized());
        let s = StateId(0);
        let before = oracle_unbounded(&v, s, Caps::default_for(&v)).unwrap().answer.definite();
        let after = oracle_unbounded(&norm.vass, norm.source(s), Caps::default_for(&norm.vass))
            .unwrap()
            .answer
            .definite();
        if let (Some(a), Some(b)) = (before, after) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn successors_respect_guards(v in common::multi_guarded(6), z in 0i64..60) {
        for q in v.states() {
            let c = Configuration::new(q, z);
            let next = v.successors(c).unwrap();
            for n in &next {
                prop_assert!(v.is_valid(*n));
            }
            let expected: BTreeSet<_> = v
                .outgoing(q)
                .iter()
                .map(|&t| v.transition(t))
                .filter(|t| v.allows(t.dst, z + t.weight))
                .map(|t| Configuration::new(t.dst, z + t.weight))
                .collect();
            prop_assert_eq!(next.into_iter().collect::<BTreeSet<_>>(), expected);
        }
    }
}

//! Polynomial bounds on the number of fixpoint rounds, on the defect of each
//! residue class and on the length of shortest runs into the fixpoint.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::Error;

fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Serialized with every value as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorstCaseBounds {
    pub size: u64,
    #[serde(serialize_with = "decimal")]
    pub poly6: BigUint,
    #[serde(serialize_with = "decimal")]
    pub poly2: BigUint,
    #[serde(serialize_with = "decimal")]
    pub poly1: BigUint,
    #[serde(serialize_with = "decimal")]
    pub poly7_prime: BigUint,
    #[serde(serialize_with = "decimal")]
    pub poly7: BigUint,
    #[serde(serialize_with = "decimal")]
    pub rounds: BigUint,
}

impl WorstCaseBounds {
    /// `(K, L, rounds)` as machine integers, if they fit.
    pub fn as_params(&self) -> Option<(usize, usize, usize)> {
        let f = |x: &BigUint| usize::try_from(x).ok();
        Some((f(&self.poly1)?, f(&self.poly7)?, f(&self.rounds)?))
    }
}

pub fn worst_case_bounds(size: u64) -> crate::Result<WorstCaseBounds> {
    if size == 0 {
        return Err(Error::Param("|Q| must be at least 1".into()));
    }
    let q = BigUint::from(size);
    let q2 = &q * &q;
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    let poly6 = (&q2 + &two) * (&q + &one) + &one;
    let poly2 = &two * &q2 * (&q2 + &two) * (&q + &one) + &two * &q * ((&q2 + &two) + (&two * &q + &one) * &q * &poly6);
    let poly1 = &two * &q2 * &poly2;
    let poly7_prime = &q2 + &q + BigUint::from(3u32) + &q * &poly1;
    let poly7 = &q * &poly7_prime * &poly7_prime + &q2 + BigUint::from(4u32);
    Ok(WorstCaseBounds {
        size,
        rounds: poly1.clone(),
        poly6,
        poly2,
        poly1,
        poly7_prime,
        poly7,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn small_sizes() {
        let c = worst_case_bounds(1).unwrap();
        assert_eq!(c.poly6, big(7));
        assert_eq!(c.poly2, big(60));
        assert_eq!(c.poly1, big(120));
        assert_eq!(c.poly7_prime, big(125));
        assert_eq!(c.poly7, big(15630));
        assert_eq!(c.as_params(), Some((120, 15630, 120)));
        let c = worst_case_bounds(2).unwrap();
        assert_eq!(c.poly6, big(19));
        assert_eq!(c.poly2, big(928));
        assert_eq!(c.poly1, big(7424));
        assert_eq!(worst_case_bounds(10).unwrap().poly6, big(1123));
        assert!(worst_case_bounds(0).is_err());
    }

    #[test]
    fn large_sizes_do_not_overflow() {
        let c = worst_case_bounds(1_000_000).unwrap();
        assert!(c.poly7 > c.poly1);
        assert!(c.as_params().is_none());
    }
}

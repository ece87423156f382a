//! Path summaries and blocked sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{add, sub, Result};
use crate::model::{Path, Vass};

/// Minimal-prefix weight, maximal-suffix weight and total weight of a path.
///
/// `weight == pmin + smax`, `pmin <= 0 <= smax`. `nadir` is the number of
/// transitions in the first minimal prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathSummary {
    pub pmin: i64,
    pub smax: i64,
    pub weight: i64,
    pub nadir: usize,
}

impl PathSummary {
    /// Summary of the empty path.
    pub const IDENTITY: PathSummary = PathSummary {
        pmin: 0,
        smax: 0,
        weight: 0,
        nadir: 0,
    };

    /// Summary of a single transition of weight `w`.
    pub fn edge(w: i64) -> Self {
        if w < 0 {
            PathSummary {
                pmin: w,
                smax: 0,
                weight: w,
                nadir: 1,
            }
        } else {
            PathSummary {
                pmin: 0,
                smax: w,
                weight: w,
                nadir: 0,
            }
        }
    }

    /// Summary of `a` followed by `b`; `a_len` is the length of `a`.
    pub fn concat(a: &PathSummary, a_len: usize, b: &PathSummary) -> Result<PathSummary> {
        let via_b = add(a.weight, b.pmin, "concatenating summaries")?;
        let weight = add(a.weight, b.weight, "concatenating summaries")?;
        let smax = b.smax.max(add(a.smax, b.weight, "concatenating summaries")?);
        let (pmin, nadir) = if a.pmin <= via_b {
            (a.pmin, a.nadir)
        } else {
            (via_b, a_len + b.nadir)
        };
        Ok(PathSummary {
            pmin,
            smax,
            weight,
            nadir,
        })
    }

    /// `self` dominates `other`: at least as good in both pmin and smax.
    pub fn dominates(&self, other: &PathSummary) -> bool {
        other.pmin <= self.pmin && other.smax <= self.smax
    }
}

pub fn summarize_weights<I: IntoIterator<Item = i64>>(weights: I) -> Result<PathSummary> {
    let mut prefix = 0i64;
    let mut pmin = 0i64;
    let mut nadir = 0usize;
    for (i, w) in weights.into_iter().enumerate() {
        prefix = add(prefix, w, "summarizing a path")?;
        if prefix < pmin {
            pmin = prefix;
            nadir = i + 1;
        }
    }
    Ok(PathSummary {
        pmin,
        smax: sub(prefix, pmin, "summarizing a path")?,
        weight: prefix,
        nadir,
    })
}

pub fn summarize_path(v: &Vass, p: &Path) -> Result<PathSummary> {
    summarize_weights(p.weights(v))
}

/// Counter values from which a path (or an iterated cycle) fails to lift.
///
/// Every `z < low_all` is blocked; `extras` lists the blocked values at or
/// above it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockedSet {
    pub low_all: i64,
    pub extras: BTreeSet<i64>,
}

impl BlockedSet {
    pub fn contains(&self, z: i64) -> bool {
        z < self.low_all || self.extras.contains(&z)
    }

    /// Largest blocked value, if any.
    pub fn max(&self) -> Option<i64> {
        self.extras
            .iter()
            .next_back()
            .copied()
            .or((self.low_all > 0).then(|| self.low_all - 1))
    }

    /// Number of blocked nonnegative values.
    pub fn len(&self) -> u64 {
        self.low_all.max(0) as u64 + self.extras.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Blocked set of a finite path. The guard of the first state counts.
pub fn blocked_set(v: &Vass, p: &Path) -> Result<BlockedSet> {
    let mut offset = 0i64;
    let mut pmin = 0i64;
    let mut hits = Vec::new();
    let states = p.states(v);
    for (i, &q) in states.iter().enumerate() {
        if i > 0 {
            offset = add(offset, v.transition(p.edges()[i - 1]).weight, "computing a blocked set")?;
            pmin = pmin.min(offset);
        }
        for &g in v.guards(q) {
            hits.push(sub(g, offset, "computing a blocked set")?);
        }
    }
    let low_all = -pmin;
    let extras = hits.into_iter().filter(|&z| z >= low_all).collect();
    Ok(BlockedSet { low_all, extras })
}

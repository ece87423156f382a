//! Positive cycles, their blocked sets, residue classes and chains.
//!
//! For every state `q` with a positive cycle of at most `|Q|` transitions we
//! fix one such cycle `γ_q` maximizing its minimal prefix weight. Iterating
//! `γ_q` from `(q, z)` fails exactly when `z < -pmin(γ_q)` or `z` hits one of
//! finitely many *roots* `g - offset` (a guard `g` met at prefix weight
//! `offset`) minus a multiple of the period. Roots therefore cut each residue
//! class into chains.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{sub, Error, Result};
use crate::model::{Configuration, Path, StateId, Vass};
use crate::pareto::best_positive_cycle;
use crate::summary::BlockedSet;

/// Largest blocked set of an iterated cycle that will be enumerated.
pub const MAX_BLOCKED_ENUMERATION: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleSelection {
    pub state: StateId,
    pub gamma: Path,
    pub period: i64,
    pub pmin: i64,
}

impl CycleSelection {
    /// Least counter value from which one iteration stays nonnegative.
    pub fn threshold(&self) -> i64 {
        -self.pmin
    }

    pub fn residue(&self, z: i64) -> i64 {
        z.rem_euclid(self.period)
    }

    /// Least `z ≡ r` with `z >= -pmin`.
    pub fn floor(&self, r: i64) -> i64 {
        let t = self.threshold();
        t + (r - t).rem_euclid(self.period)
    }
}

pub fn select_cycle(v: &Vass, q: StateId) -> Result<Option<CycleSelection>> {
    Ok(
        best_positive_cycle(v, q, v.num_states())?.map(|(gamma, s)| CycleSelection {
            state: q,
            gamma,
            period: s.weight,
            pmin: s.pmin,
        }),
    )
}

/// Selected cycle for every state that has a positive cycle of length at
/// most `|Q|`.
pub fn select_cycles(v: &Vass) -> Result<BTreeMap<StateId, CycleSelection>> {
    let mut out = BTreeMap::new();
    for q in v.states() {
        if let Some(sel) = select_cycle(v, q)? {
            out.insert(q, sel);
        }
    }
    Ok(out)
}

/// Values from which the first iteration of `γ_q` runs into a guard,
/// restricted to `z >= -pmin`.
pub fn cycle_roots(v: &Vass, sel: &CycleSelection) -> Result<BTreeSet<i64>> {
    let mut roots = BTreeSet::new();
    let states = sel.gamma.states(v);
    let mut offset = 0i64;
    for (i, &q) in states[..states.len() - 1].iter().enumerate() {
        if i > 0 {
            offset += v.transition(sel.gamma.edges()[i - 1]).weight;
        }
        for &g in v.guards(q) {
            let r = sub(g, offset, "computing cycle roots")?;
            if r >= sel.threshold() {
                roots.insert(r);
            }
        }
    }
    Ok(roots)
}

/// Counter values from which iterating `γ_q` forever fails.
pub fn blocked_omega(v: &Vass, sel: &CycleSelection) -> Result<BlockedSet> {
    let roots = cycle_roots(v, sel)?;
    let low_all = sel.threshold();
    let total: u64 = roots.iter().map(|&r| ((r - low_all) / sel.period) as u64 + 1).sum();
    if total > MAX_BLOCKED_ENUMERATION {
        return Err(Error::Param(format!(
            "blocked set of the cycle at state {} has {total} elements",
            sel.state.0
        )));
    }
    let mut extras = BTreeSet::new();
    for &r in &roots {
        let mut z = r;
        while z >= low_all {
            extras.insert(z);
            z -= sel.period;
        }
    }
    Ok(BlockedSet { low_all, extras })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueClass {
    pub state: StateId,
    pub residue: i64,
    pub floor: i64,
    pub trivial: bool,
}

/// An arithmetic progression `lo, lo + period, ..` up to `hi` (or forever).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub state: StateId,
    pub residue: i64,
    pub period: i64,
    pub lo: i64,
    pub hi: Option<i64>,
}

impl Chain {
    pub fn is_bounded(&self) -> bool {
        self.hi.is_some()
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= self.lo && z.rem_euclid(self.period) == self.residue && self.hi.is_none_or(|h| z <= h)
    }

    /// Number of elements of a bounded chain.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<u64> {
        self.hi.map(|h| ((h - self.lo) / self.period) as u64 + 1)
    }

    /// Elements of a bounded chain, ascending. Empty for unbounded chains.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        let n = self.len().unwrap_or(0);
        (0..n).map(move |i| self.lo + i as i64 * self.period)
    }
}

fn class_chains(sel: &CycleSelection, r: i64, roots: &[i64]) -> Vec<Chain> {
    let w = sel.period;
    let chain = |lo, hi| Chain {
        state: sel.state,
        residue: r,
        period: w,
        lo,
        hi,
    };
    let mut out = Vec::new();
    let mut next = sel.floor(r);
    for &root in roots {
        if next < root {
            out.push(chain(next, Some(root - w)));
        }
        out.push(chain(root, Some(root)));
        next = root + w;
    }
    out.push(chain(next, None));
    out
}

/// All chains of the residue class `r`; the last one is unbounded.
pub fn chains_of(v: &Vass, sel: &CycleSelection, r: i64) -> Result<Vec<Chain>> {
    if r < 0 || r >= sel.period {
        return Err(Error::Param(format!("residue {r} outside [0, {})", sel.period)));
    }
    let roots: Vec<i64> = cycle_roots(v, sel)?
        .into_iter()
        .filter(|&z| sel.residue(z) == r)
        .collect();
    Ok(class_chains(sel, r, &roots))
}

#[derive(Debug, Clone)]
struct ClassInfo {
    roots: Vec<i64>,
    chains: Range<usize>,
}

/// Cycle data of one state in `Q₊`.
#[derive(Debug, Clone)]
pub struct StateCycles {
    pub selection: CycleSelection,
    pub roots: BTreeSet<i64>,
    classes: BTreeMap<i64, ClassInfo>,
    bounded: Vec<Chain>,
}

/// Where a configuration sits relative to the chain decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    /// Not in `Conf₊`.
    Outside,
    Trivial,
    Unbounded,
    /// Index into [`StateCycles::bounded_chains`].
    Bounded(usize),
}

impl StateCycles {
    fn build(v: &Vass, selection: CycleSelection) -> Result<Self> {
        let roots = cycle_roots(v, &selection)?;
        let mut by_class: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for &z in &roots {
            by_class.entry(selection.residue(z)).or_default().push(z);
        }
        let mut classes = BTreeMap::new();
        let mut bounded = Vec::new();
        for (r, rs) in by_class {
            let start = bounded.len();
            let mut chains = class_chains(&selection, r, &rs);
            chains.pop();
            bounded.extend(chains);
            classes.insert(
                r,
                ClassInfo {
                    roots: rs,
                    chains: start..bounded.len(),
                },
            );
        }
        Ok(StateCycles {
            selection,
            roots,
            classes,
            bounded,
        })
    }

    pub fn state(&self) -> StateId {
        self.selection.state
    }

    pub fn period(&self) -> i64 {
        self.selection.period
    }

    pub fn pmin(&self) -> i64 {
        self.selection.pmin
    }

    /// Residues of the classes that contain at least one root, ascending.
    pub fn nontrivial_residues(&self) -> impl Iterator<Item = i64> + '_ {
        self.classes.keys().copied()
    }

    pub fn num_nontrivial(&self) -> usize {
        self.classes.len()
    }

    pub fn is_trivial(&self, r: i64) -> bool {
        !self.classes.contains_key(&r)
    }

    pub fn class(&self, r: i64) -> ResidueClass {
        ResidueClass {
            state: self.state(),
            residue: r,
            floor: self.selection.floor(r),
            trivial: self.is_trivial(r),
        }
    }

    pub fn class_roots(&self, r: i64) -> &[i64] {
        self.classes.get(&r).map_or(&[], |c| &c.roots)
    }

    pub fn bounded_chains(&self) -> &[Chain] {
        &self.bounded
    }

    /// Bounded chains of class `r` with their indices, ascending.
    pub fn class_chains(&self, r: i64) -> impl Iterator<Item = (usize, &Chain)> + '_ {
        let range = self.classes.get(&r).map_or(0..0, |c| c.chains.clone());
        range.map(move |i| (i, &self.bounded[i]))
    }

    /// First element of the unbounded chain of class `r`.
    pub fn unbounded_start(&self, r: i64) -> i64 {
        match self.classes.get(&r) {
            Some(c) => c.roots.last().expect("nontrivial class has a root") + self.period(),
            None => self.selection.floor(r),
        }
    }

    /// Every chain of class `r`, the unbounded one last.
    pub fn chains(&self, r: i64) -> Vec<Chain> {
        class_chains(&self.selection, r, self.class_roots(r))
    }

    pub fn place(&self, z: i64) -> Place {
        if z < self.selection.threshold() {
            return Place::Outside;
        }
        let Some(info) = self.classes.get(&self.selection.residue(z)) else {
            return Place::Trivial;
        };
        if z > *info.roots.last().expect("nontrivial class has a root") {
            return Place::Unbounded;
        }
        let chains = &self.bounded[info.chains.clone()];
        let i = chains.partition_point(|c| c.lo <= z) - 1;
        Place::Bounded(info.chains.start + i)
    }
}

/// Cycle data for all states.
#[derive(Debug, Clone)]
pub struct CycleAnalysis {
    states: Vec<Option<StateCycles>>,
}

impl CycleAnalysis {
    pub fn new(v: &Vass) -> Result<Self> {
        Self::with_parallel(v, false)
    }

    pub fn with_parallel(v: &Vass, parallel: bool) -> Result<Self> {
        let one = |q: StateId| -> Result<Option<StateCycles>> {
            select_cycle(v, q)?.map(|sel| StateCycles::build(v, sel)).transpose()
        };
        let states = if parallel {
            (0..v.num_states())
                .into_par_iter()
                .map(|i| one(StateId(i)))
                .collect::<Result<_>>()?
        } else {
            v.states().map(one).collect::<Result<_>>()?
        };
        Ok(CycleAnalysis { states })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn q_plus(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| StateId(i))
    }

    pub fn get(&self, q: StateId) -> Option<&StateCycles> {
        self.states.get(q.0).and_then(Option::as_ref)
    }

    pub fn conf_plus_contains(&self, c: Configuration) -> bool {
        self.get(c.state).is_some_and(|s| c.counter >= s.selection.threshold())
    }

    pub fn place(&self, c: Configuration) -> Place {
        self.get(c.state).map_or(Place::Outside, |s| s.place(c.counter))
    }

    /// Total number of bounded chains.
    pub fn num_bounded(&self) -> usize {
        self.states.iter().flatten().map(|s| s.bounded.len()).sum()
    }
}

//! The unbounded configurations of `Conf₊` as a fixpoint, and the decision
//! procedures for unboundedness and coverability built on it.
//!
//! A [`USet`] stores, for every bounded chain, the largest element it
//! contains; it contains a prefix of every bounded chain, every unbounded
//! chain and every trivial residue class. Rounds grow it by asking the
//! bounded-cover search which chain elements reach the current set.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounded::{bounded_cover_search, BoundedOutcome, CoverSearch, DiseqObjective};
use crate::constants::worst_case_bounds;
use crate::cycles::{Chain, CycleAnalysis, Place};
use crate::error::{Error, Result};
use crate::model::{Configuration, StateId, Vass};
use crate::normalize::normalize_guards_with_map;
use crate::reductions::reduce_cov_to_unbound;

#[derive(Debug, Clone)]
pub struct USet {
    analysis: Arc<CycleAnalysis>,
    maxes: Vec<Vec<Option<i64>>>,
}

impl PartialEq for USet {
    fn eq(&self, other: &Self) -> bool {
        self.maxes == other.maxes
    }
}

impl USet {
    pub fn analysis(&self) -> &CycleAnalysis {
        &self.analysis
    }

    pub fn shared_analysis(&self) -> Arc<CycleAnalysis> {
        Arc::clone(&self.analysis)
    }

    /// Largest element of `U ∩ C` for bounded chain `chain` of `q`.
    pub fn chain_max(&self, q: StateId, chain: usize) -> Option<i64> {
        self.maxes[q.0][chain]
    }

    pub fn contains(&self, c: Configuration) -> bool {
        match self.analysis.place(c) {
            Place::Outside => false,
            Place::Trivial | Place::Unbounded => true,
            Place::Bounded(i) => self.maxes[c.state.0][i].is_some_and(|m| c.counter <= m),
        }
    }

    /// Elements of `C ∖ U` for a bounded chain, ascending.
    pub fn missing(&self, q: StateId, chain: usize) -> Vec<i64> {
        let c = &self.bounded(q)[chain];
        let max = self.maxes[q.0][chain];
        c.elements().filter(|&x| max.is_none_or(|m| x > m)).collect()
    }

    fn bounded(&self, q: StateId) -> &[Chain] {
        self.analysis.get(q).map_or(&[], |s| s.bounded_chains())
    }

    /// Every `(q, z)` in `U` with `z <= cap`, ascending.
    pub fn members_up_to(&self, q: StateId, cap: i64) -> Vec<i64> {
        (0..=cap).filter(|&z| self.contains(Configuration::new(q, z))).collect()
    }

    /// Bounded-chain elements in `self` but not in `older`, per state.
    pub fn added_since(&self, older: &USet) -> Vec<(StateId, Vec<i64>)> {
        let mut out = Vec::new();
        for q in self.analysis.q_plus() {
            let mut added = Vec::new();
            for (i, c) in self.bounded(q).iter().enumerate() {
                let (old, new) = (older.maxes[q.0][i], self.maxes[q.0][i]);
                if old != new {
                    added.extend(
                        c.elements()
                            .filter(|&x| old.is_none_or(|m| x > m) && new.is_some_and(|m| x <= m)),
                    );
                }
            }
            if !added.is_empty() {
                added.sort_unstable();
                out.push((q, added));
            }
        }
        out
    }

    /// Per-chain maxima in state, chain order.
    pub fn maxima(&self) -> Vec<ChainMax> {
        let mut out = Vec::new();
        for q in self.analysis.q_plus() {
            for (i, c) in self.bounded(q).iter().enumerate() {
                out.push(ChainMax {
                    state: q,
                    chain: i,
                    lo: c.lo,
                    hi: c.hi.expect("bounded"),
                    max: self.maxes[q.0][i],
                });
            }
        }
        out
    }

    /// Number of bounded-chain elements contained.
    pub fn bounded_size(&self) -> u64 {
        let mut n = 0;
        for q in self.analysis.q_plus() {
            for (i, c) in self.bounded(q).iter().enumerate() {
                if let Some(m) = self.maxes[q.0][i] {
                    n += ((m - c.lo) / c.period) as u64 + 1;
                }
            }
        }
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainMax {
    pub state: StateId,
    pub chain: usize,
    pub lo: i64,
    pub hi: i64,
    pub max: Option<i64>,
}

/// Unbounded chains and trivial classes only.
pub fn compute_u0(analysis: Arc<CycleAnalysis>) -> USet {
    let maxes = (0..analysis.num_states())
        .map(|i| vec![None; analysis.get(StateId(i)).map_or(0, |s| s.bounded_chains().len())])
        .collect();
    USet { analysis, maxes }
}

pub fn u_contains(u: &USet, c: Configuration) -> bool {
    u.contains(c)
}

/// Disequality objectives at `q` whose union is `{ z : (q, z) ∈ u }`.
///
/// The first objective covers the trivial classes; each nontrivial class
/// contributes one objective starting at its least element in `u`.
pub fn decompose_objectives(u: &USet, q: StateId) -> Result<Vec<DiseqObjective>> {
    let Some(sc) = u.analysis.get(q) else {
        return Ok(Vec::new());
    };
    let w = sc.period();
    let nontrivial: Vec<i64> = sc.nontrivial_residues().collect();
    let mut out = Vec::new();
    if (nontrivial.len() as i64) < w {
        out.push(DiseqObjective::new(q, -sc.pmin(), w, nontrivial.iter().copied(), [])?);
    }
    for &r in &nontrivial {
        let chains: Vec<(usize, &Chain)> = sc.class_chains(r).collect();
        let ell = chains
            .iter()
            .find(|(i, _)| u.maxes[q.0][*i].is_some())
            .map_or_else(|| sc.unbounded_start(r), |(_, c)| c.lo);
        let mut holes = Vec::new();
        for &(i, c) in &chains {
            let max = u.maxes[q.0][i];
            holes.extend(c.elements().filter(|&x| x >= ell && max.is_none_or(|m| x > m)));
        }
        let others = nontrivial.iter().copied().filter(|&a| a != r);
        out.push(DiseqObjective::new(q, ell, w, others, holes)?);
    }
    Ok(out)
}

/// Objectives for every state of `Q₊`.
pub fn all_objectives(u: &USet) -> Result<Vec<DiseqObjective>> {
    let mut out = Vec::new();
    for q in u.analysis.q_plus() {
        out.extend(decompose_objectives(u, q)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Start small, double `K` and `L` until a stable round survives one
    /// doubling.
    Adaptive,
    /// Worst-case bounds; only feasible for very small `|Q|`.
    Rigorous,
    /// The given `K` and `L`, stopping at the first stable round.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Add every inspected element that reaches `U`, then close downward.
    Saturating,
    /// Add only the elements at minimal distance to `U`, then close downward.
    Staged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixpointParams {
    /// Candidates inspected per bounded chain and round.
    pub k: usize,
    /// Step bound of the bounded-cover queries.
    pub l: usize,
    pub max_rounds: usize,
    pub mode: Mode,
    pub strategy: Strategy,
    pub parallel: bool,
}

impl FixpointParams {
    pub fn adaptive(size: usize) -> Self {
        let start = 64.max(4 * size * size);
        FixpointParams {
            k: start,
            l: start,
            max_rounds: 10_000,
            mode: Mode::Adaptive,
            strategy: Strategy::Saturating,
            parallel: false,
        }
    }

    pub fn rigorous(size: usize) -> Result<Self> {
        let c = worst_case_bounds(size.max(1) as u64)?;
        let (k, l, rounds) = c
            .as_params()
            .ok_or_else(|| Error::Param(format!("worst-case constants for |Q| = {size} do not fit in memory")))?;
        Ok(FixpointParams {
            k,
            l,
            max_rounds: rounds.saturating_add(1),
            mode: Mode::Rigorous,
            strategy: Strategy::Saturating,
            parallel: false,
        })
    }

    pub fn fixed(k: usize, l: usize) -> Self {
        FixpointParams {
            k,
            l,
            max_rounds: 10_000,
            mode: Mode::Fixed,
            strategy: Strategy::Saturating,
            parallel: false,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Self {
        self.max_rounds = max_rounds;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.l == 0 {
            return Err(Error::Param("K and L must be at least 1".into()));
        }
        Ok(())
    }
}

/// Candidates of one chain: the top `k` missing elements, descending, then
/// the least missing element.
fn candidates(u: &USet, q: StateId, chain: usize, k: usize) -> Vec<i64> {
    let missing = u.missing(q, chain);
    let mut out: Vec<i64> = missing.iter().rev().take(k).copied().collect();
    if let Some(&lo) = missing.first() {
        if !out.contains(&lo) {
            out.push(lo);
        }
    }
    out
}

fn chain_list(u: &USet) -> Vec<(StateId, usize)> {
    let mut out = Vec::new();
    for q in u.analysis.q_plus() {
        for i in 0..u.maxes[q.0].len() {
            out.push((q, i));
        }
    }
    out
}

fn map_chains<T, F>(chains: &[(StateId, usize)], parallel: bool, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(StateId, usize) -> Result<T> + Sync,
{
    if parallel {
        chains.par_iter().map(|&(q, i)| f(q, i)).collect()
    } else {
        chains.iter().map(|&(q, i)| f(q, i)).collect()
    }
}

fn search(v: &Vass, c: Configuration, objectives: &[DiseqObjective], l: usize) -> Result<BoundedOutcome> {
    bounded_cover_search(v, c, objectives, l, false)
}

/// One saturating round: every inspected chain element that reaches `u`
/// within `L` steps is added together with the chain elements below it.
pub fn saturate_step(v: &Vass, u: &USet, params: &FixpointParams) -> Result<USet> {
    params.validate()?;
    let objectives = all_objectives(u)?;
    let searcher = CoverSearch::new(v, &objectives, params.l)?;
    let chains = chain_list(u);
    let found = map_chains(&chains, params.parallel, |q, i| {
        for x in candidates(u, q, i, params.k) {
            let c = Configuration::new(q, x);
            if v.is_valid(c) && searcher.run(c, false)?.found() {
                return Ok(Some(x));
            }
        }
        Ok(None)
    })?;
    let mut next = u.clone();
    for (&(q, i), x) in chains.iter().zip(found) {
        if let Some(x) = x {
            next.maxes[q.0][i] = Some(x);
        }
    }
    Ok(next)
}

/// One round of the minimal-distance construction. Returns the new set and
/// the distance of the added elements.
pub fn staged_step(v: &Vass, u: &USet, params: &FixpointParams) -> Result<(USet, Option<usize>)> {
    params.validate()?;
    let objectives = all_objectives(u)?;
    let searcher = CoverSearch::new(v, &objectives, params.l)?;
    let chains = chain_list(u);
    let per_chain = map_chains(&chains, params.parallel, |q, i| {
        let mut best: Option<(usize, i64)> = None;
        for x in candidates(u, q, i, params.k) {
            let c = Configuration::new(q, x);
            if !v.is_valid(c) {
                continue;
            }
            if let Some(hit) = searcher.run(c, false)?.hit {
                let better = match best {
                    None => true,
                    Some((d, y)) => hit.round < d || (hit.round == d && x > y),
                };
                if better {
                    best = Some((hit.round, x));
                }
            }
        }
        Ok(best)
    })?;
    let dist = per_chain.iter().flatten().map(|&(d, _)| d).min();
    let mut next = u.clone();
    if let Some(d) = dist {
        for (&(q, i), best) in chains.iter().zip(per_chain) {
            if let Some((dd, x)) = best {
                if dd == d {
                    next.maxes[q.0][i] = Some(x);
                }
            }
        }
    }
    Ok((next, dist))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRound {
    pub round: usize,
    pub k: usize,
    pub l: usize,
    /// Distance of the added elements (minimal-distance strategy only).
    pub distance: Option<usize>,
    pub added: Vec<(StateId, Vec<i64>)>,
    pub maxima: Vec<ChainMax>,
}

#[derive(Debug, Clone)]
pub struct Fixpoint {
    pub u: USet,
    /// Rounds executed, including the confirming ones.
    pub rounds: usize,
    pub complete: bool,
    pub k: usize,
    pub l: usize,
    /// `U_0` followed by every round that changed the set.
    pub trace: Vec<TraceRound>,
}

/// Iterates rounds from `U_0` until the set is stable.
pub fn compute_conf_infinity(v: &Vass, params: &FixpointParams) -> Result<Fixpoint> {
    if !v.is_normalized() {
        return Err(Error::NotNormalized("the fixpoint computation"));
    }
    let analysis = Arc::new(CycleAnalysis::with_parallel(v, params.parallel)?);
    conf_infinity_with(v, analysis, params)
}

pub fn conf_infinity_with(v: &Vass, analysis: Arc<CycleAnalysis>, params: &FixpointParams) -> Result<Fixpoint> {
    params.validate()?;
    let mut p = *params;
    let mut u = compute_u0(analysis);
    let mut trace = vec![TraceRound {
        round: 0,
        k: p.k,
        l: p.l,
        distance: None,
        added: Vec::new(),
        maxima: u.maxima(),
    }];
    let mut rounds = 0;
    let mut confirming = false;
    let mut complete = false;
    if u.analysis.num_bounded() == 0 {
        complete = true;
    }
    while !complete && rounds < p.max_rounds {
        rounds += 1;
        let (next, distance) = match p.strategy {
            Strategy::Saturating => (saturate_step(v, &u, &p)?, None),
            Strategy::Staged => staged_step(v, &u, &p)?,
        };
        if next == u {
            if p.mode == Mode::Adaptive && !confirming {
                p.k = p.k.saturating_mul(2);
                p.l = p.l.saturating_mul(2);
                confirming = true;
            } else {
                complete = true;
            }
            continue;
        }
        confirming = false;
        trace.push(TraceRound {
            round: trace.len(),
            k: p.k,
            l: p.l,
            distance,
            added: next.added_since(&u),
            maxima: next.maxima(),
        });
        u = next;
    }
    Ok(Fixpoint {
        u,
        rounds,
        complete,
        k: p.k,
        l: p.l,
        trace,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Answer {
    Yes,
    No,
    Incomplete,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Incomplete => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub answer: Answer,
    pub rounds: usize,
    pub k: usize,
    pub l: usize,
    /// Length of the run found from the start into the fixpoint.
    pub distance: Option<usize>,
    pub states: usize,
    pub bounded_chains: usize,
}

/// Whether the set of configurations reachable from `(s, 0)` is infinite.
///
/// Multi-guard states are split first. `params` sizes refer to the split
/// instance; pass `None` for the adaptive default.
pub fn decide_unboundedness(v: &Vass, s: StateId, params: Option<FixpointParams>) -> Result<Decision> {
    v.check_state(s)?;
    let norm = normalize_guards_with_map(v)?;
    let w = &norm.vass;
    let params = params.unwrap_or_else(|| FixpointParams::adaptive(w.num_states()));
    let init = Configuration::new(norm.source(s), 0);
    let mut decision = Decision {
        answer: Answer::No,
        rounds: 0,
        k: params.k,
        l: params.l,
        distance: None,
        states: w.num_states(),
        bounded_chains: 0,
    };
    if !w.is_valid(init) {
        return Ok(decision);
    }
    let fix = compute_conf_infinity(w, &params)?;
    decision.rounds = fix.rounds;
    decision.k = fix.k;
    decision.l = fix.l;
    decision.bounded_chains = fix.u.analysis.num_bounded();
    if fix.u.contains(init) {
        decision.answer = Answer::Yes;
        decision.distance = Some(0);
        return Ok(decision);
    }
    let objectives = all_objectives(&fix.u)?;
    let mut out = search(w, init, &objectives, fix.l)?;
    if !out.found() && !out.exhausted && params.mode == Mode::Adaptive {
        out = search(w, init, &objectives, fix.l.saturating_mul(2))?;
    }
    decision.distance = out.hit.map(|h| h.round);
    decision.answer = match (out.found(), fix.complete) {
        (true, _) => Answer::Yes,
        (false, true) => Answer::No,
        (false, false) => Answer::Incomplete,
    };
    Ok(decision)
}

/// Whether some valid run from `(s, 0)` reaches `t`.
pub fn decide_coverability(v: &Vass, s: StateId, t: StateId, params: Option<FixpointParams>) -> Result<Decision> {
    let (w, s2) = reduce_cov_to_unbound(v, s, t)?;
    decide_unboundedness(&w, s2, params)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDelta {
    pub state: StateId,
    pub chain: usize,
    pub lo: i64,
    pub hi: i64,
    pub missing: usize,
    pub active: bool,
    pub delta: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDelta {
    pub state: StateId,
    pub residue: i64,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaStats {
    /// Chains with at least one missing element.
    pub chains: Vec<ChainDelta>,
    /// Nontrivial classes.
    pub classes: Vec<ClassDelta>,
}

/// Values `x` between the least and largest missing element of the chain
/// with `(q, x) ∈ Conf₊ ∖ u`, ascending.
pub fn delta_of_chain(u: &USet, q: StateId, chain: usize) -> Vec<i64> {
    let missing = u.missing(q, chain);
    let (Some(&m1), Some(&m2)) = (missing.first(), missing.last()) else {
        return Vec::new();
    };
    let sc = u.analysis.get(q).expect("bounded chain implies Q₊");
    let w = sc.period();
    let mut out = Vec::new();
    for r in sc.nontrivial_residues() {
        let first = m1 + (r - m1).rem_euclid(w);
        let mut x = first;
        while x <= m2 {
            if !u.contains(Configuration::new(q, x)) {
                out.push(x);
            }
            x += w;
        }
    }
    out.sort_unstable();
    out
}

fn class_min_in_u(u: &USet, q: StateId, r: i64) -> i64 {
    let sc = u.analysis.get(q).expect("Q₊");
    sc.class_chains(r)
        .find(|(i, _)| u.maxes[q.0][*i].is_some())
        .map_or_else(|| sc.unbounded_start(r), |(_, c)| c.lo)
}

pub fn delta_stats(u: &USet) -> DeltaStats {
    let mut chains = Vec::new();
    let mut classes = Vec::new();
    for q in u.analysis.q_plus() {
        let sc = u.analysis.get(q).expect("Q₊");
        for r in sc.nontrivial_residues() {
            let low = class_min_in_u(u, q, r);
            let mut union = BTreeSet::new();
            for (i, c) in sc.class_chains(r) {
                let missing = u.missing(q, i).len();
                if missing == 0 {
                    continue;
                }
                let hi = c.hi.expect("bounded");
                let active = low < hi;
                let delta = delta_of_chain(u, q, i);
                if active {
                    union.extend(delta.iter().copied());
                }
                chains.push(ChainDelta {
                    state: q,
                    chain: i,
                    lo: c.lo,
                    hi,
                    missing,
                    active,
                    delta,
                });
            }
            classes.push(ClassDelta {
                state: q,
                residue: r,
                delta: union.len(),
            });
        }
    }
    DeltaStats { chains, classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;
    use crate::format::parse_vass;

    fn running_u0() -> (Vass, USet) {
        let v = running_example();
        let a = Arc::new(CycleAnalysis::new(&v).unwrap());
        (v, compute_u0(a))
    }

    fn staged(v: &Vass) -> Fixpoint {
        let p = FixpointParams::fixed(64, 64).with_strategy(Strategy::Staged);
        compute_conf_infinity(v, &p).unwrap()
    }

    fn added(v: &Vass, r: &TraceRound) -> Vec<(String, Vec<i64>)> {
        r.added
            .iter()
            .map(|(q, xs)| (v.name(*q).to_string(), xs.clone()))
            .collect()
    }

    #[test]
    fn u0_membership() {
        let (v, u) = running_u0();
        let c = |n: &str, z| Configuration::new(v.state(n).unwrap(), z);
        assert!(u.contains(c("s4", 97)));
        assert!(!u.contains(c("s4", 96)));
        assert!(u.contains(c("s4", 53)));
        assert!(u.contains(c("s4", 99)));
        assert!(!u.contains(c("s4", 51)));
        assert!(!u.contains(c("s0", 1000)));
        assert!(u.contains(c("s1", 13)));
        assert!(u.contains(c("s1", 66)));
        assert!(!u.contains(c("s1", 60)));
    }

    #[test]
    fn empty_q_plus() {
        let v = parse_vass("state a\nstate b\nedge a b 3\n").unwrap();
        let fix = compute_conf_infinity(&v, &FixpointParams::adaptive(2)).unwrap();
        assert_eq!(fix.rounds, 0);
        assert!(fix.complete);
        assert!(!fix.u.contains(Configuration::new(StateId(0), 5)));
    }

    #[test]
    fn u0_decomposition_at_s4() {
        let (v, u) = running_u0();
        let q = v.state("s4").unwrap();
        let objs = decompose_objectives(&u, q).unwrap();
        assert_eq!(objs.len(), 4);
        assert_eq!(objs[0].ell, 52);
        assert_eq!(objs[0].period, 9);
        assert_eq!(objs[0].forbidden_residues, BTreeSet::from([0, 3, 6]));
        for z in 0..=200 {
            let inside = objs.iter().any(|o| o.contains_counter(z));
            assert_eq!(inside, u.contains(Configuration::new(q, z)), "{z}");
        }
    }

    #[test]
    fn golden_staged_trace() {
        let v = running_example();
        let fix = staged(&v);
        assert!(fix.complete);
        #[allow(clippy::type_complexity)]
        let got: Vec<(Option<usize>, Vec<(String, Vec<i64>)>)> =
            fix.trace.iter().map(|r| (r.distance, added(&v, r))).collect();
        let row = |d, q: &str, xs: Vec<i64>| (Some(d), vec![(q.to_string(), xs)]);
        let expected = vec![
            (None, vec![]),
            row(4, "s4", vec![54, 60, 63, 69, 93, 96]),
            row(1, "s6", vec![45, 51, 54, 60, 69, 78, 84, 87]),
            row(1, "s5", vec![2, 5, 8, 14, 17, 23, 26, 32, 35]),
            row(1, "s4", vec![57, 66, 75, 78, 84, 87]),
            row(1, "s6", vec![48, 57, 66, 75]),
            row(2, "s1", (12..=54).step_by(6).collect()),
            row(1, "s2", (0..=36).step_by(6).collect()),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn saturating_reaches_same_fixpoint() {
        let v = running_example();
        let sat = compute_conf_infinity(&v, &FixpointParams::adaptive(v.num_states())).unwrap();
        let st = staged(&v);
        assert!(sat.complete);
        assert_eq!(sat.u, st.u);
        let s4 = v.state("s4").unwrap();
        let unbounded: Vec<i64> = (52..=100)
            .filter(|&z| !sat.u.contains(Configuration::new(s4, z)))
            .collect();
        assert_eq!(unbounded, vec![72, 81, 90]);
    }

    #[test]
    fn u1_decomposition_is_exact() {
        let v = running_example();
        let fix = staged(&v);
        let (v, u0) = (v, compute_u0(fix.u.shared_analysis()));
        let p = FixpointParams::fixed(64, 64);
        let (u1, _) = staged_step(&v, &u0, &p).unwrap();
        let q = v.state("s4").unwrap();
        let objs = decompose_objectives(&u1, q).unwrap();
        let class0 = objs.iter().find(|o| o.ell == 54).unwrap();
        assert_eq!(class0.forbidden_values, BTreeSet::from([72, 81, 90]));
        for z in 0..=130 {
            assert_eq!(
                objs.iter().any(|o| o.contains_counter(z)),
                u1.contains(Configuration::new(q, z))
            );
        }
    }

    #[test]
    fn delta_example() {
        let (v, u0) = running_u0();
        let (u1, _) = staged_step(&v, &u0, &FixpointParams::fixed(64, 64)).unwrap();
        let q = v.state("s4").unwrap();
        assert_eq!(delta_of_chain(&u1, q, 0), vec![72, 75, 78, 81]);
        let stats = delta_stats(&u1);
        let c = stats.chains.iter().find(|c| c.state == q && c.chain == 0).unwrap();
        assert!(c.active);
        assert_eq!(c.missing, 2);
        assert!(delta_of_chain(&u1, q, 1).len() == 1);
    }

    #[test]
    fn decisions_on_small_instances() {
        let v = running_example();
        let d = decide_unboundedness(&v, v.state("s0").unwrap(), None).unwrap();
        assert_eq!(d.answer, Answer::Yes);
        let v1 = parse_vass("state q\nedge q q 1\n").unwrap();
        assert_eq!(decide_unboundedness(&v1, StateId(0), None).unwrap().answer, Answer::Yes);
        let v2 = parse_vass("state q\n").unwrap();
        assert_eq!(decide_unboundedness(&v2, StateId(0), None).unwrap().answer, Answer::No);
        let v3 = parse_vass("state q 0\nedge q q 1\n").unwrap();
        assert_eq!(decide_unboundedness(&v3, StateId(0), None).unwrap().answer, Answer::No);
    }

    #[test]
    fn coverability_cases() {
        let v = running_example();
        let s0 = v.state("s0").unwrap();
        assert_eq!(
            decide_coverability(&v, s0, v.state("s13").unwrap(), None)
                .unwrap()
                .answer,
            Answer::Yes
        );
        assert_eq!(decide_coverability(&v, s0, s0, None).unwrap().answer, Answer::Yes);
        let w = parse_vass("state a\nstate b\nedge b a 1\n").unwrap();
        assert_eq!(
            decide_coverability(&w, StateId(0), StateId(1), None).unwrap().answer,
            Answer::No
        );
    }

    #[test]
    fn rigorous_mode_on_one_state() {
        let v = parse_vass("state q 3\nedge q q 2\n").unwrap();
        let p = FixpointParams::rigorous(1).unwrap();
        assert_eq!((p.k, p.l), (120, 15630));
        let d = decide_unboundedness(&v, StateId(0), Some(p)).unwrap();
        assert_eq!(d.answer, Answer::Yes);
        let v = parse_vass("state q 2\nedge q q 2\n").unwrap();
        let d = decide_unboundedness(&v, StateId(0), Some(p)).unwrap();
        assert_eq!(d.answer, Answer::No);
    }
}

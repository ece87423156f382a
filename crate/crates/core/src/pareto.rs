//! Pareto sets of path summaries and the lasso decision procedure for
//! guard-free instances.
//!
//! A path dominates another (same endpoints) when its minimal-prefix weight
//! and its maximal-suffix weight are both at least as large. Families are
//! built by repeated squaring: level `k` holds, for every pair of states, at
//! most `|Q|` paths dominating every path of length `<= 2^k`, each of length
//! `<= 4^k`. All cells of one level are independent.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{add, Error, Result};
use crate::model::{Path, StateId, Vass};
use crate::reductions::reduce_cov_to_unbound;
use crate::summary::{summarize_path, PathSummary};

/// A summarized path together with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParetoElem {
    pub summary: PathSummary,
    pub witness: Path,
}

impl ParetoElem {
    pub fn from_path(v: &Vass, witness: Path) -> Result<Self> {
        Ok(ParetoElem {
            summary: summarize_path(v, &witness)?,
            witness,
        })
    }

    pub fn start(&self) -> StateId {
        self.witness.start()
    }

    pub fn end(&self, v: &Vass) -> StateId {
        self.witness.end(v)
    }
}

/// `a` dominates `b`.
pub fn dominates(a: &ParetoElem, b: &ParetoElem) -> bool {
    a.summary.dominates(&b.summary)
}

pub fn concat(v: &Vass, a: &ParetoElem, b: &ParetoElem) -> Result<ParetoElem> {
    let witness = a.witness.concat(v, &b.witness)?;
    let summary = PathSummary::concat(&a.summary, a.witness.len(), &b.summary)?;
    Ok(ParetoElem { summary, witness })
}

fn state_seq_cmp(v: &Vass, a: &Path, b: &Path) -> Ordering {
    a.states(v).cmp(&b.states(v)).then_with(|| a.edges().cmp(b.edges()))
}

/// Shortest first, then lexicographic.
fn tie_break(v: &Vass, a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| state_seq_cmp(v, a, b))
}

/// Keeps one representative per summary and drops dominated elements.
fn prune_dominated(v: &Vass, mut elems: Vec<ParetoElem>) -> Vec<ParetoElem> {
    // best pmin first; within equal pmin, best smax first
    elems.sort_by(|a, b| {
        b.summary
            .pmin
            .cmp(&a.summary.pmin)
            .then(b.summary.smax.cmp(&a.summary.smax))
            .then_with(|| tie_break(v, &a.witness, &b.witness))
    });
    let mut out: Vec<ParetoElem> = Vec::new();
    for e in elems {
        // earlier elements have pmin >= e.pmin, so e is dominated iff some
        // kept element has smax >= e.smax
        if out.last().is_some_and(|k| k.summary.smax >= e.summary.smax) {
            continue;
        }
        out.push(e);
    }
    out
}

/// Replaces a set of `p`-`q` paths by a Pareto set with at most one element
/// per nadir state.
///
/// For every nadir state `r`, the heaviest minimal prefix ending at `r` is
/// joined with the heaviest maximal suffix starting at `r`. Ties prefer the
/// shorter, then lexicographically smaller, piece. Dominated outputs are
/// dropped.
pub fn pareto_filter(v: &Vass, paths: &[ParetoElem]) -> Result<Vec<ParetoElem>> {
    if paths.is_empty() {
        return Ok(Vec::new());
    }
    let n = v.num_states();
    let mut prefix: Vec<Option<(i64, Path)>> = vec![None; n];
    let mut suffix: Vec<Option<(i64, Path)>> = vec![None; n];
    let better = |slot: &Option<(i64, Path)>, w: i64, p: &Path| match slot {
        None => true,
        Some((bw, bp)) => w > *bw || (w == *bw && tie_break(v, p, bp) == Ordering::Less),
    };
    for e in paths {
        let cut = e.summary.nadir;
        let edges = e.witness.edges();
        let pre = Path::new(v, e.witness.start(), edges[..cut].to_vec())?;
        let r = pre.end(v);
        let suf = Path::new(v, r, edges[cut..].to_vec())?;
        if better(&prefix[r.0], e.summary.pmin, &pre) {
            prefix[r.0] = Some((e.summary.pmin, pre));
        }
        if better(&suffix[r.0], e.summary.smax, &suf) {
            suffix[r.0] = Some((e.summary.smax, suf));
        }
    }
    let mut out = Vec::new();
    for (pre, suf) in prefix.into_iter().zip(suffix) {
        if let (Some((_, pre)), Some((_, suf))) = (pre, suf) {
            out.push(ParetoElem::from_path(v, pre.concat(v, &suf)?)?);
        }
    }
    Ok(prune_dominated(v, out))
}

/// Pareto sets for all ordered pairs of states at one doubling level.
#[derive(Debug, Clone, Serialize)]
pub struct ParetoFamily {
    pub level: u32,
    size: usize,
    cells: Vec<Vec<ParetoElem>>,
}

impl ParetoFamily {
    pub fn cell(&self, p: StateId, q: StateId) -> &[ParetoElem] {
        &self.cells[p.0 * self.size + q.0]
    }

    pub fn num_states(&self) -> usize {
        self.size
    }

    /// Largest number of elements in any cell.
    pub fn max_cell(&self) -> usize {
        self.cells.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Longest witness in the family.
    pub fn max_witness_len(&self) -> usize {
        self.cells.iter().flatten().map(|e| e.witness.len()).max().unwrap_or(0)
    }
}

fn map_cells<F>(n: usize, parallel: bool, f: F) -> Result<Vec<Vec<ParetoElem>>>
where
    F: Fn(usize, usize) -> Result<Vec<ParetoElem>> + Sync,
{
    if parallel {
        (0..n * n).into_par_iter().map(|i| f(i / n, i % n)).collect()
    } else {
        (0..n * n).map(|i| f(i / n, i % n)).collect()
    }
}

fn level_zero(v: &Vass, parallel: bool) -> Result<ParetoFamily> {
    let n = v.num_states();
    let cells = map_cells(n, parallel, |p, q| {
        let mut input = Vec::new();
        if p == q {
            input.push(ParetoElem::from_path(v, Path::empty(StateId(p)))?);
        }
        for &e in v.outgoing(StateId(p)) {
            if v.transition(e).dst.0 == q {
                input.push(ParetoElem::from_path(v, Path::new(v, StateId(p), vec![e])?)?);
            }
        }
        pareto_filter(v, &input)
    })?;
    Ok(ParetoFamily {
        level: 0,
        size: n,
        cells,
    })
}

fn next_level(v: &Vass, prev: &ParetoFamily, parallel: bool) -> Result<ParetoFamily> {
    let n = prev.size;
    let cells = map_cells(n, parallel, |p, q| {
        let mut input = Vec::new();
        for r in 0..n {
            for a in prev.cell(StateId(p), StateId(r)) {
                for b in prev.cell(StateId(r), StateId(q)) {
                    input.push(concat(v, a, b)?);
                }
            }
        }
        pareto_filter(v, &input)
    })?;
    Ok(ParetoFamily {
        level: prev.level + 1,
        size: n,
        cells,
    })
}

/// Number of doubling levels needed to cover paths of length `|Q|`.
pub fn levels_for(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Every level from 0 up to `ceil(log2 |Q|)`. Guards are ignored.
pub fn build_family_levels(v: &Vass, parallel: bool) -> Result<Vec<ParetoFamily>> {
    let mut levels = vec![level_zero(v, parallel)?];
    for _ in 0..levels_for(v.num_states()) {
        let next = next_level(v, levels.last().expect("nonempty"), parallel)?;
        levels.push(next);
    }
    Ok(levels)
}

/// The final family, a Pareto set for all paths of length `<= |Q|`.
pub fn build_families(v: &Vass) -> Result<ParetoFamily> {
    Ok(build_family_levels(v, false)?.pop().expect("level 0 always exists"))
}

/// A lasso: a stem from the source followed by a positive cycle that can be
/// iterated forever once the stem has been taken from counter 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lasso {
    pub stem: Path,
    pub cycle: Path,
}

/// Unboundedness of `(s, 0)` for a guard-free VASS.
pub fn decide_unbounded_lasso(v: &Vass, s: StateId) -> Result<Option<Lasso>> {
    if !v.is_guard_free() {
        return Err(Error::GuardedInput("pareto"));
    }
    v.check_state(s)?;
    let fam = build_families(v)?;
    for q in v.states() {
        for stem in fam.cell(s, q).iter().filter(|e| e.summary.pmin >= 0) {
            for cyc in fam.cell(q, q) {
                let reach = add(stem.summary.weight, cyc.summary.pmin, "checking a lasso")?;
                if cyc.summary.weight >= 1 && reach >= 0 {
                    return Ok(Some(Lasso {
                        stem: stem.witness.clone(),
                        cycle: cyc.witness.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Coverability of `t` from `(s, 0)` for a guard-free VASS.
pub fn decide_cover_pareto(v: &Vass, s: StateId, t: StateId) -> Result<bool> {
    if !v.is_guard_free() {
        return Err(Error::GuardedInput("pareto"));
    }
    let (w, s2) = reduce_cov_to_unbound(v, s, t)?;
    Ok(decide_unbounded_lasso(&w, s2)?.is_some())
}

/// A positive `q`-cycle of at most `max_len` transitions whose minimal
/// prefix weight is as large as possible.
///
/// Ties prefer fewer transitions, so a cycle is never beaten by its own
/// powers, then larger weight, then the lexicographically smaller state
/// sequence among the candidates kept by the front. The search keeps, for
/// every state and exact length, the paths from `q` not dominated in
/// (minimal prefix weight, weight).
pub fn best_positive_cycle(v: &Vass, q: StateId, max_len: usize) -> Result<Option<(Path, PathSummary)>> {
    struct Entry {
        pmin: i64,
        weight: i64,
        states: Vec<StateId>,
        path: Path,
    }
    let key_cmp = |a: &Entry, b: &Entry| {
        b.pmin
            .cmp(&a.pmin)
            .then(b.weight.cmp(&a.weight))
            .then_with(|| a.states.cmp(&b.states))
            .then_with(|| a.path.edges().cmp(b.path.edges()))
    };

    let n = v.num_states();
    let mut layer: Vec<Vec<Entry>> = (0..n).map(|_| Vec::new()).collect();
    layer[q.0].push(Entry {
        pmin: 0,
        weight: 0,
        states: vec![q],
        path: Path::empty(q),
    });
    let mut best: Option<Entry> = None;
    for _ in 0..max_len {
        let mut next: Vec<Vec<Entry>> = (0..n).map(|_| Vec::new()).collect();
        for cell in &layer {
            for e in cell {
                let at = *e.states.last().expect("nonempty");
                for &t in v.outgoing(at) {
                    let tr = v.transition(t);
                    let weight = add(e.weight, tr.weight, "searching cycles")?;
                    let mut states = e.states.clone();
                    states.push(tr.dst);
                    let mut path = e.path.clone();
                    path.push_unchecked(t);
                    next[tr.dst.0].push(Entry {
                        pmin: e.pmin.min(weight),
                        weight,
                        states,
                        path,
                    });
                }
            }
        }
        for cell in &mut next {
            cell.sort_by(key_cmp);
            let mut kept: Vec<Entry> = Vec::with_capacity(cell.len());
            for e in cell.drain(..) {
                if kept.last().is_some_and(|k| k.weight >= e.weight) {
                    continue;
                }
                kept.push(e);
            }
            *cell = kept;
        }
        for e in &next[q.0] {
            let better = |b: &Entry| {
                e.pmin > b.pmin || (e.pmin == b.pmin && e.path.len() == b.path.len() && key_cmp(e, b) == Ordering::Less)
            };
            if e.weight >= 1 && best.as_ref().is_none_or(better) {
                best = Some(Entry {
                    pmin: e.pmin,
                    weight: e.weight,
                    states: e.states.clone(),
                    path: e.path.clone(),
                });
            }
        }
        if next.iter().all(Vec::is_empty) {
            break;
        }
        layer = next;
    }
    best.map(|b| Ok((b.path.clone(), summarize_path(v, &b.path)?)))
        .transpose()
}

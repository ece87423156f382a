//! Length-bounded coverability of disequality objectives.
//!
//! The search keeps one layer of counter values per state and round. After
//! every expansion a layer is pruned twice: within each residue class modulo
//! the objective period only the `n + L` largest values survive, then only
//! the `(n + L)(m + 1)` largest values overall, where `n` and `m` count the
//! forbidden values and residues. A larger value can always follow the same
//! path as a smaller one unless a guard or forbidden value interferes, and
//! there are too few of those to block every kept value.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{add, Error, Result};
use crate::model::{Configuration, Path, StateId, TransitionId, Vass};

/// Counters `x >= ell` at `target` with `x mod period` outside
/// `forbidden_residues` and `x` outside `forbidden_values`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiseqObjective {
    pub target: StateId,
    pub ell: i64,
    pub period: i64,
    pub forbidden_residues: BTreeSet<i64>,
    pub forbidden_values: BTreeSet<i64>,
}

impl DiseqObjective {
    pub fn new<R, B>(target: StateId, ell: i64, period: i64, residues: R, values: B) -> Result<Self>
    where
        R: IntoIterator<Item = i64>,
        B: IntoIterator<Item = i64>,
    {
        if period < 1 {
            return Err(Error::Param(format!("objective period {period} < 1")));
        }
        if ell < 0 {
            return Err(Error::Param(format!("objective lower bound {ell} < 0")));
        }
        let forbidden_residues: BTreeSet<i64> = residues.into_iter().collect();
        if let Some(&a) = forbidden_residues.iter().find(|&&a| a < 0 || a >= period) {
            return Err(Error::Param(format!("residue {a} outside [0, {period})")));
        }
        Ok(DiseqObjective {
            target,
            ell,
            period,
            forbidden_residues,
            forbidden_values: values.into_iter().collect(),
        })
    }

    /// Every counter `>= ell` at `target`.
    pub fn at_least(target: StateId, ell: i64) -> Self {
        DiseqObjective {
            target,
            ell: ell.max(0),
            period: 1,
            forbidden_residues: BTreeSet::new(),
            forbidden_values: BTreeSet::new(),
        }
    }

    /// Number of forbidden values.
    pub fn n(&self) -> usize {
        self.forbidden_values.len()
    }

    /// Number of forbidden residues.
    pub fn m(&self) -> usize {
        self.forbidden_residues.len()
    }

    /// All residues forbidden.
    pub fn is_empty(&self) -> bool {
        self.m() as i64 >= self.period
    }

    pub fn contains_counter(&self, x: i64) -> bool {
        x >= self.ell
            && !self.forbidden_residues.contains(&x.rem_euclid(self.period))
            && !self.forbidden_values.contains(&x)
    }

    /// Per-state layer bound after pruning for a search of `steps` rounds.
    pub fn layer_bound(&self, steps: usize) -> usize {
        (self.n() + steps).saturating_mul(self.m() + 1)
    }
}

pub fn objective_contains(o: &DiseqObjective, c: Configuration) -> bool {
    c.state == o.target && o.contains_counter(c.counter)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hit {
    /// Length of the run found; the smallest possible.
    pub round: usize,
    /// Index into the objective list.
    pub objective: usize,
    pub config: Configuration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedOutcome {
    pub hit: Option<Hit>,
    pub witness: Option<Path>,
    pub rounds: usize,
    /// Largest per-state layer seen after pruning.
    pub max_layer: usize,
    pub pruned: bool,
    /// The reachable set was exhausted without pruning, so a negative answer
    /// holds for every step bound.
    pub exhausted: bool,
}

impl BoundedOutcome {
    pub fn found(&self) -> bool {
        self.hit.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Prune {
    period: i64,
    per_class: usize,
    total: usize,
}

#[derive(Clone, Copy)]
struct Parent {
    index: u32,
    edge: TransitionId,
}

/// Objectives and pruning rules relevant from one start state.
struct Plan {
    by_target: Vec<Vec<usize>>,
    rules: Vec<Prune>,
}

/// Bounded search against a fixed objective list, reusable across many start
/// configurations. Per-start-state setup is computed once and cached.
pub struct CoverSearch<'a> {
    v: &'a Vass,
    objectives: &'a [DiseqObjective],
    steps: usize,
    plans: Vec<OnceLock<Plan>>,
}

fn prune_layer(values: &[i64], rules: &[Prune], keep: &mut [bool]) -> bool {
    let min_cap = rules
        .iter()
        .map(|r| r.per_class.min(r.total))
        .min()
        .unwrap_or(usize::MAX);
    if values.len() <= min_cap {
        keep.fill(true);
        return false;
    }
    keep.fill(false);
    let mut per_class: HashMap<i64, usize> = HashMap::new();
    for rule in rules {
        per_class.clear();
        let mut total = 0;
        for (i, &x) in values.iter().enumerate().rev() {
            if total == rule.total {
                break;
            }
            let count = per_class.entry(x.rem_euclid(rule.period)).or_insert(0);
            if *count < rule.per_class {
                *count += 1;
                total += 1;
                keep[i] = true;
            }
        }
    }
    keep.iter().any(|k| !k)
}

impl<'a> CoverSearch<'a> {
    pub fn new(v: &'a Vass, objectives: &'a [DiseqObjective], steps: usize) -> Result<Self> {
        for o in objectives {
            v.check_state(o.target)?;
        }
        Ok(CoverSearch {
            v,
            objectives,
            steps,
            plans: (0..v.num_states()).map(|_| OnceLock::new()).collect(),
        })
    }

    fn plan(&self, s: StateId) -> &Plan {
        self.plans[s.0].get_or_init(|| {
            let reach = self.v.reachable_from(s);
            let mut by_target = vec![Vec::new(); self.v.num_states()];
            let mut rules: Vec<Prune> = Vec::new();
            let mut seen = HashSet::new();
            for (i, o) in self.objectives.iter().enumerate() {
                if o.is_empty() || !reach[o.target.0] {
                    continue;
                }
                by_target[o.target.0].push(i);
                let per_class = o.n().saturating_add(self.steps);
                let rule = Prune {
                    period: o.period,
                    per_class,
                    total: per_class.saturating_mul(o.m() + 1),
                };
                if seen.insert(rule) {
                    rules.push(rule);
                }
            }
            Plan { by_target, rules }
        })
    }

    /// Searches for a valid run of at most `steps` transitions from `init`
    /// into any of the objectives.
    pub fn run(&self, init: Configuration, want_witness: bool) -> Result<BoundedOutcome> {
        let v = self.v;
        v.check_state(init.state)?;
        let mut outcome = BoundedOutcome {
            hit: None,
            witness: None,
            rounds: 0,
            max_layer: 0,
            pruned: false,
            exhausted: false,
        };
        if !v.is_valid(init) {
            outcome.exhausted = true;
            return Ok(outcome);
        }
        let plan = self.plan(init.state);
        if plan.rules.is_empty() {
            outcome.exhausted = true;
            return Ok(outcome);
        }
        let check = |layer: &[(usize, i64)]| -> Option<(usize, usize)> {
            for (idx, &(q, x)) in layer.iter().enumerate() {
                if let Some(&oi) = plan.by_target[q]
                    .iter()
                    .find(|&&oi| self.objectives[oi].contains_counter(x))
                {
                    return Some((idx, oi));
                }
            }
            None
        };

        // sorted by (state, counter)
        let mut layer: Vec<(usize, i64)> = vec![(init.state.0, init.counter)];
        let mut history: Vec<Vec<Parent>> = Vec::new();
        let mut seen: HashSet<(usize, i64)> = HashSet::from([(init.state.0, init.counter)]);
        let mut found = check(&layer);
        let mut round = 0;
        let mut next: Vec<(usize, i64, Parent)> = Vec::new();
        let mut keep = Vec::new();
        while found.is_none() && round < self.steps {
            round += 1;
            next.clear();
            for (idx, &(q, x)) in layer.iter().enumerate() {
                for &t in v.outgoing(StateId(q)) {
                    let tr = v.transition(t);
                    let z = add(x, tr.weight, "expanding a layer")?;
                    if v.allows(tr.dst, z) {
                        next.push((
                            tr.dst.0,
                            z,
                            Parent {
                                index: idx as u32,
                                edge: t,
                            },
                        ));
                    }
                }
            }
            next.sort_unstable_by_key(|&(q, z, p)| (q, z, p.index, p.edge));
            next.dedup_by_key(|&mut (q, z, _)| (q, z));
            let mut new_layer = Vec::with_capacity(next.len());
            let mut parents = Vec::new();
            let mut lo = 0;
            while lo < next.len() {
                let q = next[lo].0;
                let hi = lo + next[lo..].iter().take_while(|e| e.0 == q).count();
                let cell = &next[lo..hi];
                let values: Vec<i64> = cell.iter().map(|e| e.1).collect();
                keep.clear();
                keep.resize(cell.len(), true);
                if prune_layer(&values, &plan.rules, &mut keep) {
                    outcome.pruned = true;
                }
                let before = new_layer.len();
                for (i, &(q, z, p)) in cell.iter().enumerate() {
                    if keep[i] {
                        new_layer.push((q, z));
                        if want_witness {
                            parents.push(p);
                        }
                    }
                }
                outcome.max_layer = outcome.max_layer.max(new_layer.len() - before);
                lo = hi;
            }
            layer = new_layer;
            if want_witness {
                history.push(parents);
            }
            found = check(&layer);
            if found.is_none() && !outcome.pruned {
                let mut fresh = false;
                for &e in &layer {
                    fresh |= seen.insert(e);
                }
                if !fresh {
                    outcome.exhausted = true;
                    break;
                }
            }
        }
        outcome.rounds = round;
        if let Some((idx, oi)) = found {
            let (q, x) = layer[idx];
            outcome.hit = Some(Hit {
                round,
                objective: oi,
                config: Configuration::new(StateId(q), x),
            });
            if want_witness {
                let mut edges = Vec::with_capacity(round);
                let mut idx = idx;
                for parents in history.iter().rev() {
                    let p = parents[idx];
                    edges.push(p.edge);
                    idx = p.index as usize;
                }
                edges.reverse();
                outcome.witness = Some(Path::new(v, init.state, edges)?);
            }
        }
        Ok(outcome)
    }
}

/// Searches for a valid run of at most `steps` transitions from `init` into
/// any of `objectives`.
///
/// With several objectives a value survives pruning if the rule of at least
/// one objective keeps it; this is a superset of each single-objective layer
/// and so preserves the guarantee for every objective.
pub fn bounded_cover_search(
    v: &Vass,
    init: Configuration,
    objectives: &[DiseqObjective],
    steps: usize,
    want_witness: bool,
) -> Result<BoundedOutcome> {
    CoverSearch::new(v, objectives, steps)?.run(init, want_witness)
}

/// Whether some valid run of at most `steps` transitions leads from `init`
/// into `o`.
pub fn decide_bounded_cover(v: &Vass, init: Configuration, o: &DiseqObjective, steps: usize) -> Result<bool> {
    Ok(bounded_cover_search(v, init, std::slice::from_ref(o), steps, false)?.found())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;
    use crate::format::parse_vass;
    use crate::model::lift_run;

    fn s10_objective(v: &Vass) -> DiseqObjective {
        DiseqObjective::new(v.state("s10").unwrap(), 80, 10, [0, 3, 6, 9], []).unwrap()
    }

    #[test]
    fn objective_membership() {
        let q = StateId(3);
        let o = DiseqObjective::new(q, 52, 9, [0, 3, 6], []).unwrap();
        assert!(objective_contains(&o, Configuration::new(q, 53)));
        assert!(!objective_contains(&o, Configuration::new(q, 54)));
        assert!(!objective_contains(&o, Configuration::new(StateId(2), 53)));
        let all = DiseqObjective::at_least(q, 0);
        assert!(objective_contains(&all, Configuration::new(q, 0)));
        assert!(DiseqObjective::new(q, 0, 3, [3], []).is_err());
        assert!(DiseqObjective::new(q, 0, 2, [0, 1], []).unwrap().is_empty());
    }

    #[test]
    fn zero_steps() {
        let v = running_example();
        let q = v.state("s4").unwrap();
        let o = DiseqObjective::at_least(q, 0);
        assert!(decide_bounded_cover(&v, Configuration::new(q, 63), &o, 0).unwrap());
        let o = DiseqObjective::at_least(q, 64);
        assert!(!decide_bounded_cover(&v, Configuration::new(q, 63), &o, 0).unwrap());
    }

    #[test]
    fn running_example_primitive_path_to_trivial_class() {
        let v = running_example();
        let o = s10_objective(&v);
        let init = Configuration::new(v.state("s4").unwrap(), 63);
        let out = bounded_cover_search(&v, init, std::slice::from_ref(&o), 10, true).unwrap();
        let hit = out.hit.unwrap();
        assert_eq!(hit.round, 4);
        assert_eq!(hit.config.counter, 85);
        let w = out.witness.unwrap();
        assert_eq!(w.display(&v), "s4,s7,s8,s9,s10");
        let run = lift_run(&v, &w, 63).unwrap().unwrap();
        assert!(objective_contains(&o, *run.last().unwrap()));
    }

    #[test]
    fn running_example_blocked_start_fails() {
        let v = running_example();
        let o = s10_objective(&v);
        let init = Configuration::new(v.state("s4").unwrap(), 72);
        assert!(!decide_bounded_cover(&v, init, &o, 10).unwrap());
    }

    #[test]
    fn invalid_start_and_empty_objective() {
        let v = running_example();
        let s4 = v.state("s4").unwrap();
        let o = DiseqObjective::at_least(s4, 0);
        assert!(!decide_bounded_cover(&v, Configuration::new(s4, 90), &o, 5).unwrap());
        let empty = DiseqObjective::new(s4, 0, 1, [0], []).unwrap();
        assert!(!decide_bounded_cover(&v, Configuration::new(s4, 63), &empty, 5).unwrap());
    }

    #[test]
    fn exhaustion_is_reported() {
        let v = parse_vass("state a\nstate b\nedge a b 1\nedge b a -1\n").unwrap();
        let o = DiseqObjective::at_least(StateId(1), 5);
        let out = bounded_cover_search(&v, Configuration::new(StateId(0), 0), &[o], 1000, false).unwrap();
        assert!(!out.found());
        assert!(out.exhausted);
        assert!(out.rounds < 5);
    }

    #[test]
    fn pruning_respects_bound() {
        // fan-out producing many values per state
        let v = parse_vass("state a\nedge a a 1\nedge a a 2\nedge a a 3\nedge a a -1\n").unwrap();
        let o = DiseqObjective::new(StateId(0), 1000, 4, [1], [7]).unwrap();
        let out = bounded_cover_search(
            &v,
            Configuration::new(StateId(0), 0),
            std::slice::from_ref(&o),
            6,
            false,
        )
        .unwrap();
        assert!(out.max_layer <= o.layer_bound(6));
        assert!(!out.found());
    }
}

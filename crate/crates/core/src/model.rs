//! Model types and run semantics for one-counter VASS with disequality guards.
//!
//! A [`Vass`] is a weighted directed multigraph over named states. Each state
//! carries a finite set of forbidden counter values (its guards); a valid run
//! never rests on a state while the counter equals one of them, and never
//! lets the counter go negative.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{add, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateId(pub usize);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Identity of a transition; parallel edges get distinct ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransitionId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub src: StateId,
    pub dst: StateId,
    pub weight: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub state: StateId,
    pub counter: i64,
}

impl Configuration {
    pub fn new(state: StateId, counter: i64) -> Self {
        Configuration { state, counter }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vass {
    names: Vec<String>,
    guards: Vec<BTreeSet<i64>>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<TransitionId>>,
    incoming: Vec<Vec<TransitionId>>,
    by_name: HashMap<String, StateId>,
    initial: Option<StateId>,
    target: Option<StateId>,
}

// `#` only opens a comment at the start of a token, so `q#1` is a legal name.
fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace) && !name.starts_with('#')
}

impl Vass {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a state. Names must be nonempty, whitespace-free and unique.
    pub fn add_state<I>(&mut self, name: &str, guards: I) -> Result<StateId>
    where
        I: IntoIterator<Item = i64>,
    {
        if !valid_name(name) {
            return Err(Error::InvalidName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::DuplicateState(name.to_string()));
        }
        let guards: BTreeSet<i64> = guards.into_iter().collect();
        if let Some(&g) = guards.iter().next() {
            if g < 0 {
                return Err(Error::NegativeGuard {
                    line: 0,
                    state: name.to_string(),
                    value: g,
                });
            }
        }
        let id = StateId(self.names.len());
        self.names.push(name.to_string());
        self.guards.push(guards);
        self.outgoing.push(Vec::new());
        self.incoming.push(Vec::new());
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_transition(&mut self, src: StateId, dst: StateId, weight: i64) -> Result<TransitionId> {
        self.check_state(src)?;
        self.check_state(dst)?;
        let id = TransitionId(self.transitions.len());
        self.transitions.push(Transition { src, dst, weight });
        self.outgoing[src.0].push(id);
        self.incoming[dst.0].push(id);
        Ok(id)
    }

    pub fn set_initial(&mut self, s: Option<StateId>) -> Result<()> {
        if let Some(s) = s {
            self.check_state(s)?;
        }
        self.initial = s;
        Ok(())
    }

    pub fn set_target(&mut self, t: Option<StateId>) -> Result<()> {
        if let Some(t) = t {
            self.check_state(t)?;
        }
        self.target = t;
        Ok(())
    }

    pub fn check_state(&self, q: StateId) -> Result<()> {
        if q.0 < self.names.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange(q.0))
        }
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.names.len()).map(StateId)
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q.0]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.by_name.get(name).copied()
    }

    pub fn state_or_err(&self, name: &str) -> Result<StateId> {
        self.state(name).ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn guards(&self, q: StateId) -> &BTreeSet<i64> {
        &self.guards[q.0]
    }

    /// The unique guard of `q`, for normalized instances.
    pub fn guard(&self, q: StateId) -> Option<i64> {
        self.guards[q.0].iter().next().copied()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: TransitionId) -> &Transition {
        &self.transitions[t.0]
    }

    pub fn outgoing(&self, q: StateId) -> &[TransitionId] {
        &self.outgoing[q.0]
    }

    pub fn incoming(&self, q: StateId) -> &[TransitionId] {
        &self.incoming[q.0]
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn target(&self) -> Option<StateId> {
        self.target
    }

    pub fn is_guard_free(&self) -> bool {
        self.guards.iter().all(BTreeSet::is_empty)
    }

    pub fn is_normalized(&self) -> bool {
        self.guards.iter().all(|g| g.len() <= 1)
    }

    pub fn guarded_states(&self) -> usize {
        self.guards.iter().filter(|g| !g.is_empty()).count()
    }

    pub fn max_guard(&self) -> i64 {
        self.guards
            .iter()
            .filter_map(|g| g.iter().next_back().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs_weight(&self) -> i64 {
        self.transitions
            .iter()
            .map(|t| t.weight.saturating_abs())
            .max()
            .unwrap_or(0)
    }

    /// Whether `counter` is allowed at `q` (nonnegative and not a guard).
    #[inline]
    pub fn allows(&self, q: StateId, counter: i64) -> bool {
        counter >= 0 && !self.guards[q.0].contains(&counter)
    }

    #[inline]
    pub fn is_valid(&self, c: Configuration) -> bool {
        self.allows(c.state, c.counter)
    }

    /// All valid one-step successors of `c`.
    ///
    /// Successors that would rest on a guarded value are excluded.
    pub fn successors(&self, c: Configuration) -> Result<Vec<Configuration>> {
        let mut out = Vec::with_capacity(self.outgoing[c.state.0].len());
        for &t in &self.outgoing[c.state.0] {
            let tr = &self.transitions[t.0];
            let z = add(c.counter, tr.weight, "computing a successor")?;
            if self.allows(tr.dst, z) {
                out.push(Configuration::new(tr.dst, z));
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// States that can reach `t` in the underlying graph (including `t`).
    pub fn coreachable(&self, t: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![t];
        seen[t.0] = true;
        while let Some(q) = stack.pop() {
            for &e in &self.incoming[q.0] {
                let p = self.transitions[e.0].src;
                if !seen[p.0] {
                    seen[p.0] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States reachable from `s` in the underlying graph (including `s`).
    pub fn reachable_from(&self, s: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![s];
        seen[s.0] = true;
        while let Some(q) = stack.pop() {
            for &e in &self.outgoing[q.0] {
                let r = self.transitions[e.0].dst;
                if !seen[r.0] {
                    seen[r.0] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// A copy of this VASS with all guards removed.
    pub fn without_guards(&self) -> Vass {
        let mut v = self.clone();
        for g in &mut v.guards {
            g.clear();
        }
        v
    }
}

/// A path: a start state and a sequence of transitions chained end to start.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    start: StateId,
    edges: Vec<TransitionId>,
}

impl Path {
    pub fn empty(start: StateId) -> Self {
        Path {
            start,
            edges: Vec::new(),
        }
    }

    pub fn new(v: &Vass, start: StateId, edges: Vec<TransitionId>) -> Result<Self> {
        v.check_state(start)?;
        let mut at = start;
        for (i, &e) in edges.iter().enumerate() {
            if e.0 >= v.num_transitions() {
                return Err(Error::TransitionOutOfRange(e.0));
            }
            let tr = v.transition(e);
            if tr.src != at {
                return Err(Error::BrokenPath(i));
            }
            at = tr.dst;
        }
        Ok(Path { start, edges })
    }

    /// Builds a path from a state sequence, choosing the first matching
    /// transition (lowest id) for every consecutive pair.
    pub fn from_states(v: &Vass, states: &[StateId]) -> Result<Self> {
        let (&start, rest) = states.split_first().ok_or(Error::BrokenPath(0))?;
        v.check_state(start)?;
        let mut edges = Vec::with_capacity(rest.len());
        let mut at = start;
        for (i, &next) in rest.iter().enumerate() {
            let e = v
                .outgoing(at)
                .iter()
                .copied()
                .find(|&e| v.transition(e).dst == next)
                .ok_or(Error::BrokenPath(i))?;
            edges.push(e);
            at = next;
        }
        Ok(Path { start, edges })
    }

    /// Like [`Path::from_states`] but resolves state names.
    pub fn from_names(v: &Vass, names: &[&str]) -> Result<Self> {
        let states = names.iter().map(|n| v.state_or_err(n)).collect::<Result<Vec<_>>>()?;
        Self::from_states(v, &states)
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn end(&self, v: &Vass) -> StateId {
        self.edges.last().map_or(self.start, |&e| v.transition(e).dst)
    }

    pub fn edges(&self) -> &[TransitionId] {
        &self.edges
    }

    /// Number of transitions.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn states(&self, v: &Vass) -> Vec<StateId> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(self.start);
        out.extend(self.edges.iter().map(|&e| v.transition(e).dst));
        out
    }

    pub fn weights<'a>(&'a self, v: &'a Vass) -> impl Iterator<Item = i64> + 'a {
        self.edges.iter().map(move |&e| v.transition(e).weight)
    }

    pub fn concat(&self, v: &Vass, other: &Path) -> Result<Path> {
        let end = self.end(v);
        if end != other.start {
            return Err(Error::EndpointMismatch {
                left: end.0,
                right: other.start.0,
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            start: self.start,
            edges,
        })
    }

    /// Appends one transition without checking connectivity.
    pub(crate) fn push_unchecked(&mut self, e: TransitionId) {
        self.edges.push(e);
    }

    pub fn display(&self, v: &Vass) -> String {
        self.states(v).iter().map(|&q| v.name(q)).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Negative,
    Guard,
}

/// First position at which a path fails to lift to a valid run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Index into the state sequence of the path (0 is the start).
    pub position: usize,
    pub state: StateId,
    pub counter: i64,
    pub kind: ViolationKind,
}

/// Lifts `p` to the run starting at `(p.start, z0)`.
///
/// Returns the configuration sequence, or the first violation. The starting
/// configuration is checked like every other one.
pub fn lift_run(v: &Vass, p: &Path, z0: i64) -> Result<std::result::Result<Vec<Configuration>, Violation>> {
    let mut run = Vec::with_capacity(p.len() + 1);
    let mut z = z0;
    let mut q = p.start();
    for i in 0..=p.len() {
        if i > 0 {
            let tr = v.transition(p.edges()[i - 1]);
            z = add(z, tr.weight, "lifting a run")?;
            q = tr.dst;
        }
        if z < 0 {
            return Ok(Err(Violation {
                position: i,
                state: q,
                counter: z,
                kind: ViolationKind::Negative,
            }));
        }
        if v.guards(q).contains(&z) {
            return Ok(Err(Violation {
                position: i,
                state: q,
                counter: z,
                kind: ViolationKind::Guard,
            }));
        }
        run.push(Configuration::new(q, z));
    }
    Ok(Ok(run))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;

    #[test]
    fn running_example_successors() {
        let v = running_example();
        let s = |n: &str| v.state(n).unwrap();
        assert_eq!(
            v.successors(Configuration::new(s("s0"), 0)).unwrap(),
            vec![Configuration::new(s("s1"), 12)]
        );
        // s4 -> s5 (-52, guard 41) and s4 -> s7 (+4, guard 70)
        assert_eq!(
            v.successors(Configuration::new(s("s4"), 52)).unwrap(),
            vec![Configuration::new(s("s5"), 0), Configuration::new(s("s7"), 56)]
        );
        // (s4,93) -> (s5,41) is excluded by the guard on s5
        assert_eq!(
            v.successors(Configuration::new(s("s4"), 93)).unwrap(),
            vec![Configuration::new(s("s7"), 97)]
        );
    }

    #[test]
    fn sink_has_no_successors() {
        let mut v = Vass::new();
        let q = v.add_state("q", []).unwrap();
        assert!(v.successors(Configuration::new(q, 3)).unwrap().is_empty());
    }

    #[test]
    fn lift_run_reports_guard_violation() {
        let v = running_example();
        let p = Path::from_names(&v, &["s4", "s5", "s6"]).unwrap();
        let err = lift_run(&v, &p, 93).unwrap().unwrap_err();
        assert_eq!(err.position, 1);
        assert_eq!(err.kind, ViolationKind::Guard);
        assert_eq!(err.counter, 41);
        assert_eq!(v.name(err.state), "s5");

        let p = Path::from_names(&v, &["s0", "s1"]).unwrap();
        let run = lift_run(&v, &p, 0).unwrap().unwrap();
        assert_eq!(run.iter().map(|c| c.counter).collect::<Vec<_>>(), vec![0, 12]);
    }

    #[test]
    fn lift_run_checks_start_and_negativity() {
        let v = running_example();
        let p = Path::from_names(&v, &["s4"]).unwrap();
        assert_eq!(lift_run(&v, &p, 5).unwrap().unwrap().len(), 1);
        assert_eq!(lift_run(&v, &p, 90).unwrap().unwrap_err().position, 0);
        let p = Path::from_names(&v, &["s4", "s5"]).unwrap();
        let err = lift_run(&v, &p, 51).unwrap().unwrap_err();
        assert_eq!((err.position, err.kind), (1, ViolationKind::Negative));
    }

    #[test]
    fn overflow_is_an_error() {
        let mut v = Vass::new();
        let q = v.add_state("q", []).unwrap();
        v.add_transition(q, q, i64::MAX).unwrap();
        assert!(matches!(
            v.successors(Configuration::new(q, 1)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn names_are_validated() {
        let mut v = Vass::new();
        assert!(v.add_state("", []).is_err());
        assert!(v.add_state("a b", []).is_err());
        v.add_state("a", [1]).unwrap();
        assert_eq!(v.add_state("a", []), Err(Error::DuplicateState("a".into())));
        assert!(matches!(v.add_state("n", [-1]), Err(Error::NegativeGuard { .. })));
    }
}

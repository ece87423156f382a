//! Explicit-state exploration used as ground truth in tests.
//!
//! Nothing here depends on the cycle analysis or the fixpoint: positive
//! cycles are enumerated directly and iterated by simulation.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::bounded::{objective_contains, DiseqObjective};
use crate::error::{add, Result};
use crate::model::{Configuration, StateId, Vass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn token(self) -> &'static str {
        match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        }
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub answer: Verdict,
    pub states_explored: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub counter: i64,
    pub nodes: usize,
}

impl Caps {
    /// Largest guard plus `|Q|²·max|w|` plus 64, and a million nodes.
    pub fn default_for(v: &Vass) -> Self {
        let n = v.num_states() as i64;
        Caps {
            counter: v
                .max_guard()
                .saturating_add(n.saturating_mul(n).saturating_mul(v.max_abs_weight()))
                .saturating_add(64),
            nodes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reach {
    /// Configurations in discovery order.
    pub configs: Vec<Configuration>,
    /// Some successor exceeded the counter cap.
    pub truncated: bool,
    /// The node cap stopped the search.
    pub node_limited: bool,
}

impl Reach {
    pub fn complete(&self) -> bool {
        !self.truncated && !self.node_limited
    }
}

/// Breadth-first closure from `init`, calling `visit` on each new
/// configuration until it returns `true`.
fn explore<F>(v: &Vass, init: Configuration, caps: Caps, mut visit: F) -> Result<(Reach, bool)>
where
    F: FnMut(Configuration) -> Result<bool>,
{
    let mut reach = Reach {
        configs: Vec::new(),
        truncated: false,
        node_limited: false,
    };
    if !v.is_valid(init) {
        return Ok((reach, false));
    }
    if caps.nodes == 0 {
        reach.node_limited = true;
        return Ok((reach, false));
    }
    let mut seen = HashSet::from([init]);
    let mut queue = VecDeque::from([init]);
    reach.configs.push(init);
    if visit(init)? {
        return Ok((reach, true));
    }
    while let Some(c) = queue.pop_front() {
        for next in v.successors(c)? {
            if next.counter > caps.counter {
                reach.truncated = true;
                continue;
            }
            if !seen.insert(next) {
                continue;
            }
            if reach.configs.len() >= caps.nodes {
                reach.node_limited = true;
                return Ok((reach, false));
            }
            reach.configs.push(next);
            queue.push_back(next);
            if visit(next)? {
                return Ok((reach, true));
            }
        }
    }
    Ok((reach, false))
}

pub fn enumerate_reach(v: &Vass, init: Configuration, caps: Caps) -> Result<Reach> {
    Ok(explore(v, init, caps, |_| Ok(false))?.0)
}

pub fn oracle_cover(v: &Vass, s: StateId, t: StateId, caps: Caps) -> Result<OracleVerdict> {
    v.check_state(t)?;
    let (reach, hit) = explore(v, Configuration::new(s, 0), caps, |c| Ok(c.state == t))?;
    let n = reach.configs.len();
    Ok(if hit {
        verdict(Verdict::Yes, n, format!("reached `{}`", v.name(t)))
    } else if reach.complete() {
        verdict(Verdict::No, n, "closure complete".into())
    } else {
        verdict(Verdict::Unknown, n, cap_reason(&reach))
    })
}

fn verdict(answer: Verdict, states_explored: usize, reason: String) -> OracleVerdict {
    OracleVerdict {
        answer,
        states_explored,
        reason,
    }
}

fn cap_reason(r: &Reach) -> String {
    if r.node_limited {
        "node cap reached".into()
    } else {
        "counter cap reached".into()
    }
}

/// Simple positive cycles through `q`, as weight sequences; at most `limit`.
fn positive_simple_cycles(v: &Vass, q: StateId, limit: usize) -> Vec<Vec<(StateId, i64)>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; v.num_states()];
    let mut path: Vec<(StateId, i64)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        v: &Vass,
        q: StateId,
        at: StateId,
        weight: i64,
        on_path: &mut [bool],
        path: &mut Vec<(StateId, i64)>,
        out: &mut Vec<Vec<(StateId, i64)>>,
        limit: usize,
    ) {
        for &e in v.outgoing(at) {
            if out.len() >= limit {
                return;
            }
            let t = v.transition(e);
            let Some(w) = weight.checked_add(t.weight) else {
                continue;
            };
            if t.dst == q {
                if w > 0 {
                    let mut c = path.clone();
                    c.push((t.dst, t.weight));
                    out.push(c);
                }
            } else if !on_path[t.dst.0] {
                on_path[t.dst.0] = true;
                path.push((t.dst, t.weight));
                dfs(v, q, t.dst, w, on_path, path, out, limit);
                path.pop();
                on_path[t.dst.0] = false;
            }
        }
    }
    on_path[q.0] = true;
    dfs(v, q, q, 0, &mut on_path, &mut path, &mut out, limit);
    out
}

/// Whether iterating `cycle` forever from `(q, z)` is a valid run.
fn iterates_forever(v: &Vass, cycle: &[(StateId, i64)], z: i64) -> Result<bool> {
    let len = cycle.len() as i64;
    let safe = v
        .max_guard()
        .saturating_add(len.saturating_mul(v.max_abs_weight()))
        .saturating_add(1);
    let mut x = z;
    while x <= safe {
        for &(q, w) in cycle {
            x = add(x, w, "iterating a cycle")?;
            if !v.allows(q, x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const CYCLE_LIMIT: usize = 4096;

type WeightedCycle = Vec<(StateId, i64)>;

/// Unboundedness of `(s, 0)` by closure; answers yes as soon as some reached
/// configuration can iterate a positive simple cycle forever.
pub fn oracle_unbounded(v: &Vass, s: StateId, caps: Caps) -> Result<OracleVerdict> {
    v.check_state(s)?;
    let mut cycles: Vec<Option<Vec<WeightedCycle>>> = vec![None; v.num_states()];
    let mut fired = None;
    let (reach, hit) = explore(v, Configuration::new(s, 0), caps, |c| {
        let cs = cycles[c.state.0].get_or_insert_with(|| positive_simple_cycles(v, c.state, CYCLE_LIMIT));
        for cycle in cs.iter() {
            if iterates_forever(v, cycle, c.counter)? {
                fired = Some(c);
                return Ok(true);
            }
        }
        Ok(false)
    })?;
    let n = reach.configs.len();
    Ok(if hit {
        let c = fired.expect("hit sets the witness");
        verdict(
            Verdict::Yes,
            n,
            format!("({}, {}) iterates a positive cycle forever", v.name(c.state), c.counter),
        )
    } else if reach.complete() {
        verdict(Verdict::No, n, "closure complete".into())
    } else {
        verdict(Verdict::Unknown, n, cap_reason(&reach))
    })
}

/// Exhaustive search over all valid runs of at most `steps` transitions.
pub fn oracle_bounded_cover(v: &Vass, init: Configuration, o: &DiseqObjective, steps: usize) -> Result<bool> {
    if !v.is_valid(init) {
        return Ok(false);
    }
    let mut layer = vec![init];
    for k in 0..=steps {
        if layer.iter().any(|&c| objective_contains(o, c)) {
            return Ok(true);
        }
        if k == steps {
            break;
        }
        let mut next = Vec::new();
        for &c in &layer {
            next.extend(v.successors(c)?);
        }
        next.sort_unstable();
        next.dedup();
        layer = next;
    }
    Ok(false)
}

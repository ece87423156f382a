//! Splitting multi-guard states into chains of single-guard states.

use crate::error::Result;
use crate::model::{StateId, Vass};

/// Result of [`normalize_guards_with_map`].
#[derive(Debug, Clone)]
pub struct Normalized {
    pub vass: Vass,
    /// Original state -> first state of its chain (where incoming edges land).
    pub entry: Vec<StateId>,
    /// Original state -> last state of its chain (where outgoing edges leave).
    pub exit: Vec<StateId>,
}

impl Normalized {
    /// Maps an original source state (run start) into the normalized VASS.
    pub fn source(&self, q: StateId) -> StateId {
        self.entry[q.0]
    }

    /// Maps an original target state (to be covered) into the normalized VASS.
    pub fn target(&self, q: StateId) -> StateId {
        self.exit[q.0]
    }
}

fn fresh_name(v: &Vass, base: &str, i: usize) -> String {
    let mut name = format!("{base}#{i}");
    while v.state(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Replaces every state with `k >= 2` guards by `k` states `q#1..q#k`, each
/// carrying one guard (ascending), joined by 0-weight transitions.
pub fn normalize_guards(v: &Vass) -> Result<Vass> {
    Ok(normalize_guards_with_map(v)?.vass)
}

pub fn normalize_guards_with_map(v: &Vass) -> Result<Normalized> {
    let mut out = Vass::new();
    let mut entry = Vec::with_capacity(v.num_states());
    let mut exit = Vec::with_capacity(v.num_states());
    let mut links = Vec::new();
    for q in v.states() {
        let guards: Vec<i64> = v.guards(q).iter().copied().collect();
        if guards.len() <= 1 {
            let id = out.add_state(v.name(q), guards)?;
            entry.push(id);
            exit.push(id);
            continue;
        }
        let mut prev = None;
        for (i, &g) in guards.iter().enumerate() {
            let name = fresh_name(v, v.name(q), i + 1);
            let id = out.add_state(&name, [g])?;
            if let Some(p) = prev {
                links.push((p, id));
            } else {
                entry.push(id);
            }
            prev = Some(id);
        }
        exit.push(prev.expect("at least two guards"));
    }
    for (a, b) in links {
        out.add_transition(a, b, 0)?;
    }
    for t in v.transitions() {
        out.add_transition(exit[t.src.0], entry[t.dst.0], t.weight)?;
    }
    out.set_initial(v.initial().map(|s| entry[s.0]))?;
    out.set_target(v.target().map(|t| exit[t.0]))?;
    Ok(Normalized { vass: out, entry, exit })
}

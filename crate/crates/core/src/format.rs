//! Line-oriented text format.
//!
//! ```text
//! # comment
//! state <name> [<guard> ...]
//! edge <src> <dst> <weight>
//! init <name>
//! target <name>
//! ```
//!
//! A token starting with `#` comments out the rest of its line. States may be
//! declared after the edges that use them; declaration order fixes indices.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::Vass;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn tokens(line: &str) -> Vec<&str> {
    line.split_ascii_whitespace()
        .take_while(|t| !t.starts_with('#'))
        .collect()
}

pub fn parse_vass(text: &str) -> Result<Vass> {
    let mut v = Vass::new();
    // states first, so edges may mention states declared further down
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        if toks.first() != Some(&"state") {
            continue;
        }
        let name = toks.get(1).ok_or_else(|| syntax(lineno, "`state` needs a name"))?;
        let mut guards = Vec::with_capacity(toks.len().saturating_sub(2));
        for g in &toks[2..] {
            let value: i64 = g
                .parse()
                .map_err(|_| syntax(lineno, format!("bad guard value `{g}`")))?;
            if value < 0 {
                return Err(Error::NegativeGuard {
                    line: lineno,
                    state: name.to_string(),
                    value,
                });
            }
            guards.push(value);
        }
        v.add_state(name, guards).map_err(|e| match e {
            Error::DuplicateState(n) => syntax(lineno, format!("duplicate state name `{n}`")),
            Error::InvalidName(n) => syntax(lineno, format!("invalid state name `{n}`")),
            other => other,
        })?;
    }

    let lookup = |v: &Vass, lineno: usize, name: &str| {
        v.state(name).ok_or_else(|| Error::UndeclaredState {
            line: lineno,
            name: name.to_string(),
        })
    };

    let mut seen_init = false;
    let mut seen_target = false;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        let Some((&kw, args)) = toks.split_first() else {
            continue;
        };
        match kw {
            "state" => {}
            "edge" => {
                let [src, dst, w] = args else {
                    return Err(syntax(lineno, "`edge` expects <src> <dst> <weight>"));
                };
                let src = lookup(&v, lineno, src)?;
                let dst = lookup(&v, lineno, dst)?;
                let w: i64 = w.parse().map_err(|_| syntax(lineno, format!("bad weight `{w}`")))?;
                v.add_transition(src, dst, w)?;
            }
            "init" | "target" => {
                let [name] = args else {
                    return Err(syntax(lineno, format!("`{kw}` expects one state name")));
                };
                let q = lookup(&v, lineno, name)?;
                let seen = if kw == "init" { &mut seen_init } else { &mut seen_target };
                if *seen {
                    return Err(syntax(lineno, format!("more than one `{kw}` line")));
                }
                *seen = true;
                if kw == "init" {
                    v.set_initial(Some(q))?;
                } else {
                    v.set_target(Some(q))?;
                }
            }
            other => return Err(syntax(lineno, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(v)
}

pub fn serialize_vass(v: &Vass) -> String {
    let mut out = String::new();
    for q in v.states() {
        out.push_str("state ");
        out.push_str(v.name(q));
        for g in v.guards(q) {
            let _ = write!(out, " {g}");
        }
        out.push('\n');
    }
    for t in v.transitions() {
        let _ = writeln!(out, "edge {} {} {}", v.name(t.src), v.name(t.dst), t.weight);
    }
    if let Some(s) = v.initial() {
        let _ = writeln!(out, "init {}", v.name(s));
    }
    if let Some(t) = v.target() {
        let _ = writeln!(out, "target {}", v.name(t));
    }
    out
}

//! Instance transformations.
//!
//! [`reduce_cov_to_unbound`] turns a coverability question into an
//! unboundedness question. [`cnf_to_vass`] builds, from a 3-CNF formula over
//! `m` variables, a VASS in which `(s0, u)` is bounded exactly when the
//! assignment "`X_j` is true iff the `j`-th prime divides `u`" satisfies the
//! formula. Pruning in the first reduction only uses graph reachability; the
//! converse direction of its correctness argument involves counters above
//! `|Q|·W·G` (with `W` the largest weight and `G` the largest guard), which is
//! a useful scale when sizing tests.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{mul, Error, Result};
use crate::model::{StateId, Vass};

fn fresh_name(v: &Vass, base: &str) -> String {
    let mut name = base.to_string();
    while v.state(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Reduces "does `(s, 0)` cover `t`" to "is `(s', 0)` unbounded".
///
/// States that cannot reach `t` are removed and a fresh unguarded state `t'`
/// with a `+1` self-loop is attached to `t` by a 0-weight transition. When
/// `s` cannot reach `t` the result is a single state without transitions.
pub fn reduce_cov_to_unbound(v: &Vass, s: StateId, t: StateId) -> Result<(Vass, StateId)> {
    v.check_state(s)?;
    v.check_state(t)?;
    let keep = v.coreachable(t);
    let mut out = Vass::new();
    if !keep[s.0] {
        let only = out.add_state(v.name(s), [])?;
        out.set_initial(Some(only))?;
        return Ok((out, only));
    }
    let mut map = vec![None; v.num_states()];
    for q in v.states().filter(|q| keep[q.0]) {
        map[q.0] = Some(out.add_state(v.name(q), v.guards(q).iter().copied())?);
    }
    for tr in v.transitions() {
        if let (Some(a), Some(b)) = (map[tr.src.0], map[tr.dst.0]) {
            out.add_transition(a, b, tr.weight)?;
        }
    }
    let t_new = map[t.0].expect("t reaches itself");
    let sink = out.add_state(&fresh_name(v, &format!("{}'", v.name(t))), [])?;
    out.add_transition(t_new, sink, 0)?;
    out.add_transition(sink, sink, 1)?;
    let s_new = map[s.0].expect("s reaches t");
    out.set_initial(Some(s_new))?;
    out.set_target(Some(sink))?;
    Ok((out, s_new))
}

/// Adds a fresh initial state with a single transition of weight `u` into
/// `s`, so that `(start, 0)` behaves like `(s, u)`.
pub fn with_start_counter(v: &Vass, s: StateId, u: i64) -> Result<(Vass, StateId)> {
    v.check_state(s)?;
    if u < 0 {
        return Err(Error::Param(format!("start counter {u} is negative")));
    }
    let mut out = v.clone();
    let start = out.add_state(&fresh_name(v, "start"), [])?;
    out.add_transition(start, s, u)?;
    out.set_initial(Some(start))?;
    Ok((out, start))
}

/// The first `m` primes, `1 <= m <= 15`.
pub fn first_primes(m: usize) -> Result<Vec<u64>> {
    if !(1..=15).contains(&m) {
        return Err(Error::Param(format!("prime count {m} outside 1..=15")));
    }
    // the 15th prime is 47
    let mut sieve = [true; 48];
    let mut out = Vec::with_capacity(m);
    for p in 2..sieve.len() {
        if !sieve[p] {
            continue;
        }
        out.push(p as u64);
        if out.len() == m {
            break;
        }
        for k in (p * p..sieve.len()).step_by(p) {
            sieve[k] = false;
        }
    }
    Ok(out)
}

/// `X_j` is true iff `primes[j]` divides `u`.
pub fn val_u(u: u64, primes: &[u64]) -> Vec<bool> {
    primes.iter().map(|&p| u.is_multiple_of(p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf3 {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Cnf3 {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        let f = Cnf3 { num_vars, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            for l in c {
                if l.var == 0 || l.var > self.num_vars {
                    return Err(Error::Cnf(format!(
                        "clause {}: variable {} outside 1..={}",
                        i + 1,
                        l.var,
                        self.num_vars
                    )));
                }
            }
            if c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var {
                return Err(Error::Cnf(format!("clause {} repeats a variable", i + 1)));
            }
        }
        Ok(())
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Cnf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64;
                write!(f, "{} ", if l.positive { v } else { -v })?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF where every clause has exactly three distinct variables.
pub fn parse_dimacs(text: &str) -> Result<Cnf3> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let toks: Vec<&str> = line.split_ascii_whitespace().collect();
            let parsed = match toks.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            let Some(h) = parsed else {
                return Err(Error::Cnf(format!("line {}: bad problem line", i + 1)));
            };
            if header.replace(h).is_some() {
                return Err(Error::Cnf(format!("line {}: second problem line", i + 1)));
            }
            continue;
        }
        if header.is_none() {
            return Err(Error::Cnf(format!("line {}: clause before problem line", i + 1)));
        }
        for tok in line.split_ascii_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::Cnf(format!("line {}: bad literal `{tok}`", i + 1)))?;
            if lit != 0 {
                current.push(lit);
                continue;
            }
            let [a, b, c] = current[..] else {
                return Err(Error::Cnf(format!(
                    "line {}: clause has {} literals, expected 3",
                    i + 1,
                    current.len()
                )));
            };
            let lit = |x: i64| Literal {
                var: x.unsigned_abs() as usize,
                positive: x > 0,
            };
            clauses.push([lit(a), lit(b), lit(c)]);
            current.clear();
        }
    }
    if !current.is_empty() {
        return Err(Error::Cnf("last clause is not terminated by 0".into()));
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| Error::Cnf("missing problem line".into()))?;
    if clauses.len() != num_clauses {
        return Err(Error::Cnf(format!(
            "problem line announces {num_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    Cnf3::new(num_vars, clauses)
}

/// A uniformly random formula with `n` clauses over `m >= 3` variables.
pub fn random_cnf(m: usize, n: usize, seed: u64) -> Result<Cnf3> {
    if m < 3 {
        return Err(Error::Cnf(format!("need at least 3 variables, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..n)
        .map(|_| {
            let vars = rand::seq::index::sample(&mut rng, m, 3);
            let mut lits = vars.iter().map(|v| Literal {
                var: v + 1,
                positive: rng.gen_bool(0.5),
            });
            [lits.next().unwrap(), lits.next().unwrap(), lits.next().unwrap()]
        })
        .collect();
    Cnf3::new(m, clauses)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfVassMeta {
    pub primes: Vec<u64>,
    pub product: i64,
    pub clause_weights: Vec<i64>,
    /// Half-open guard window `[product, product + weight)` per clause.
    pub windows: Vec<(i64, i64)>,
}

/// State `s0`, one state `s{i}` per clause with a self-loop of weight
/// `c_i = p_a·p_b·p_c` and guards on the window values whose assignment
/// satisfies the clause. The result has multi-guard states.
pub fn cnf_to_vass(f: &Cnf3) -> Result<(Vass, CnfVassMeta)> {
    f.validate()?;
    let primes = first_primes(f.num_vars)?;
    let product = primes
        .iter()
        .try_fold(1i64, |acc, &p| mul(acc, p as i64, "multiplying primes"))?;
    let mut v = Vass::new();
    let s0 = v.add_state("s0", [])?;
    v.set_initial(Some(s0))?;
    let mut meta = CnfVassMeta {
        primes: primes.clone(),
        product,
        clause_weights: Vec::new(),
        windows: Vec::new(),
    };
    for (i, clause) in f.clauses.iter().enumerate() {
        let c = clause.iter().try_fold(1i64, |acc, l| {
            mul(acc, primes[l.var - 1] as i64, "computing a clause weight")
        })?;
        let end = product
            .checked_add(c)
            .ok_or(Error::Overflow("computing a guard window"))?;
        let guards = (product..end).filter(|&u| {
            clause
                .iter()
                .any(|l| (u as u64).is_multiple_of(primes[l.var - 1]) == l.positive)
        });
        let q = v.add_state(&format!("s{}", i + 1), guards)?;
        v.add_transition(s0, q, 0)?;
        v.add_transition(q, q, c)?;
        meta.clause_weights.push(c);
        meta.windows.push((product, end));
    }
    Ok((v, meta))
}

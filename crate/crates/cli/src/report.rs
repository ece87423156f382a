//! Structured output documents. Every document printed with `--format json`
//! deserializes back into one of these types.

use serde::{Deserialize, Serialize};

use ovass_core::fixpoint::{ChainMax, TraceRound};
use ovass_core::pareto::ParetoFamily;
use ovass_core::{BlockedSet, Path, Vass};

pub fn path_names(v: &Vass, p: &Path) -> Vec<String> {
    p.states(v).into_iter().map(|q| v.name(q).to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub answer: String,
    pub mode: String,
    pub algo: String,
    pub from: String,
    pub to: Option<String>,
    pub fixpoint: Option<FixpointInfo>,
    pub lasso: Option<LassoInfo>,
    pub oracle: Option<OracleInfo>,
    pub trace: Option<Vec<TraceRoundReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixpointInfo {
    pub rounds: usize,
    pub k: usize,
    pub l: usize,
    pub distance: Option<usize>,
    pub states: usize,
    pub bounded_chains: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LassoInfo {
    pub stem: Vec<String>,
    pub cycle: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInfo {
    pub states_explored: usize,
    pub reason: String,
    pub counter_cap: i64,
    pub node_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateValues {
    pub state: String,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRoundReport {
    pub round: usize,
    pub k: usize,
    pub l: usize,
    pub distance: Option<usize>,
    pub added: Vec<StateValues>,
}

impl TraceRoundReport {
    pub fn new(v: &Vass, r: &TraceRound) -> Self {
        TraceRoundReport {
            round: r.round,
            k: r.k,
            l: r.l,
            distance: r.distance,
            added: r
                .added
                .iter()
                .map(|(q, xs)| StateValues {
                    state: v.name(*q).to_string(),
                    values: xs.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockedReport {
    /// Every value below this is blocked.
    pub below: i64,
    pub extras: Vec<i64>,
}

impl From<&BlockedSet> for BlockedReport {
    fn from(b: &BlockedSet) -> Self {
        BlockedReport {
            below: b.low_all,
            extras: b.extras.iter().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub lo: i64,
    pub hi: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub residue: i64,
    pub roots: Vec<i64>,
    pub chains: Vec<ChainReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateCycleReport {
    pub state: String,
    pub gamma: Vec<String>,
    pub period: i64,
    pub pmin: i64,
    pub threshold: i64,
    /// Absent when the set is too large to enumerate.
    pub blocked_omega: Option<BlockedReport>,
    pub trivial_residues: Vec<i64>,
    pub classes: Vec<ClassReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathBlockedReport {
    pub path: Vec<String>,
    pub pmin: i64,
    pub smax: i64,
    pub weight: i64,
    pub blocked: BlockedReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMaxReport {
    pub state: String,
    pub lo: i64,
    pub hi: i64,
    pub max: Option<i64>,
}

impl ChainMaxReport {
    pub fn new(v: &Vass, m: &ChainMax) -> Self {
        ChainMaxReport {
            state: v.name(m.state).to_string(),
            lo: m.lo,
            hi: m.hi,
            max: m.max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTraceReport {
    pub complete: bool,
    pub rounds: Vec<TraceRoundReport>,
    pub maxima: Vec<ChainMaxReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoElemReport {
    pub pmin: i64,
    pub smax: i64,
    pub weight: i64,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoCellReport {
    pub from: String,
    pub to: String,
    pub elems: Vec<ParetoElemReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoLevelReport {
    pub level: u32,
    pub cells: Vec<ParetoCellReport>,
}

impl ParetoLevelReport {
    pub fn new(v: &Vass, fam: &ParetoFamily) -> Self {
        let mut cells = Vec::new();
        for p in v.states() {
            for q in v.states() {
                let elems: Vec<ParetoElemReport> = fam
                    .cell(p, q)
                    .iter()
                    .map(|e| ParetoElemReport {
                        pmin: e.summary.pmin,
                        smax: e.summary.smax,
                        weight: e.summary.weight,
                        witness: path_names(v, &e.witness),
                    })
                    .collect();
                if !elems.is_empty() {
                    cells.push(ParetoCellReport {
                        from: v.name(p).to_string(),
                        to: v.name(q).to_string(),
                        elems,
                    });
                }
            }
        }
        ParetoLevelReport {
            level: fam.level,
            cells,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InspectReport {
    pub states: usize,
    pub transitions: usize,
    pub normalized: bool,
    pub q_plus: Vec<String>,
    pub cycles: Vec<StateCycleReport>,
    pub path: Option<PathBlockedReport>,
    pub u_trace: Option<UTraceReport>,
    pub pareto: Option<Vec<ParetoLevelReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitReport {
    pub round: usize,
    pub state: String,
    pub counter: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedReport {
    pub answer: String,
    pub steps: usize,
    pub rounds: usize,
    pub max_layer: usize,
    pub pruned: bool,
    pub exhausted: bool,
    pub hit: Option<HitReport>,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub answer: String,
    pub mode: String,
    pub states_explored: Option<usize>,
    pub reason: String,
    pub counter_cap: i64,
    pub node_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfSidecar {
    pub num_vars: usize,
    /// Clauses as DIMACS literals.
    pub clauses: Vec<[i64; 3]>,
    pub primes: Vec<u64>,
    pub product: i64,
    pub clause_weights: Vec<i64>,
    pub windows: Vec<(i64, i64)>,
    pub start: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub start: String,
    pub target: String,
    pub vass: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub answer: String,
    pub checks: Vec<SelftestCheck>,
}

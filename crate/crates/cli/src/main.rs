//! `ovass`: coverability and unboundedness for one-counter VASS with
//! disequality guards.
//!
//! Exit status: 0 answered, 1 usage error, 2 input error, 3 incomplete.

mod report;
mod selftest;

use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ovass_core::bounded::bounded_cover_search;
use ovass_core::cycles::MAX_BLOCKED_ENUMERATION;
use ovass_core::fixpoint::Strategy as FixStrategy;
use ovass_core::oracle::{oracle_bounded_cover, oracle_cover, oracle_unbounded};
use ovass_core::pareto::build_family_levels;
use ovass_core::reductions::{cnf_to_vass, parse_dimacs, random_cnf, reduce_cov_to_unbound};
use ovass_core::summary::summarize_path;
use ovass_core::{
    blocked_omega, blocked_set, compute_conf_infinity, decide_coverability, decide_unbounded_lasso,
    decide_unboundedness, normalize_guards, parse_vass, serialize_vass, Answer, Caps, Configuration, CycleAnalysis,
    DiseqObjective, FixpointParams, Path, StateId, Vass,
};

use report::*;

#[derive(Parser)]
#[command(
    name = "ovass",
    version,
    about = "Coverability and unboundedness for one-counter VASS with disequality guards"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the parallel phases (default: $OVASS_THREADS or 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide unboundedness or coverability.
    Check(CheckArgs),
    /// Length-bounded coverability of a disequality objective.
    BoundedCover(BoundedArgs),
    /// Dump cycles, chains, blocked sets, the fixpoint trace or Pareto families.
    Inspect(InspectArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Apply a reduction.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Explicit-state ground truth.
    Oracle(OracleArgs),
    /// Run the golden suite on the built-in examples.
    Selftest,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Unboundedness,
    Coverability,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Algo {
    Fixpoint,
    Pareto,
    Oracle,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Saturating,
    Staged,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Args)]
struct CapArgs {
    /// Oracle counter cap (default: largest guard + |Q|²·max|w| + 64).
    #[arg(long)]
    counter_cap: Option<i64>,
    /// Oracle node cap.
    #[arg(long, default_value_t = 1_000_000)]
    node_cap: usize,
}

impl CapArgs {
    fn caps(&self, v: &Vass) -> Caps {
        let mut c = Caps::default_for(v);
        if let Some(x) = self.counter_cap {
            c.counter = x;
        }
        c.nodes = self.node_cap;
        c
    }
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = CheckMode::Unboundedness)]
    mode: CheckMode,
    #[arg(long, value_enum, default_value_t = Algo::Fixpoint)]
    algo: Algo,
    /// Start state (default: the `init` declaration).
    #[arg(long)]
    from: Option<String>,
    /// Target state for coverability (default: the `target` declaration).
    #[arg(long)]
    to: Option<String>,
    /// Use the worst-case polynomial bounds (tiny instances only).
    #[arg(long, conflicts_with_all = ["k", "l"])]
    rigorous: bool,
    /// Fixed candidate count per chain (requires --l).
    #[arg(long, requires = "l")]
    k: Option<usize>,
    /// Fixed step bound (requires --k).
    #[arg(long, requires = "k")]
    l: Option<usize>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Saturating)]
    strategy: StrategyArg,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Include the fixpoint trace of the normalized instance.
    #[arg(long)]
    emit_trace: bool,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct ObjectiveArgs {
    /// Objective state.
    #[arg(long)]
    target: Option<String>,
    /// Least admissible counter.
    #[arg(long, default_value_t = 0)]
    ell: i64,
    #[arg(long, default_value_t = 1)]
    period: i64,
    /// Forbidden residues modulo the period.
    #[arg(long = "not-res", value_delimiter = ',')]
    not_res: Vec<i64>,
    /// Forbidden counter values.
    #[arg(long = "not-val", value_delimiter = ',')]
    not_val: Vec<i64>,
    /// Step bound.
    #[arg(long)]
    steps: Option<usize>,
    /// Start state (default: the `init` declaration).
    #[arg(long)]
    from: Option<String>,
    /// Start counter.
    #[arg(long, default_value_t = 0)]
    counter: i64,
}

#[derive(Args)]
struct BoundedArgs {
    #[command(flatten)]
    objective: ObjectiveArgs,
    /// Report a witness run.
    #[arg(long)]
    witness: bool,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct InspectArgs {
    /// Also report the minimal-distance fixpoint trace.
    #[arg(long)]
    u_trace: bool,
    /// Also report the Pareto families of every doubling level.
    #[arg(long)]
    pareto: bool,
    /// Also report the blocked set of this comma-separated state path.
    #[arg(long, value_delimiter = ',')]
    path: Vec<String>,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Subcommand)]
enum GenCommand {
    /// A guarded VASS whose start configurations encode valuations of a 3-CNF.
    Cnf(CnfArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CnfSource {
    /// Read the formula from a DIMACS file.
    #[arg(long)]
    dimacs: Option<PathBuf>,
    /// Random formula: variables, clauses, seed.
    #[arg(long, num_args = 3, value_names = ["M", "N", "SEED"])]
    random: Option<Vec<u64>>,
}

#[derive(Args)]
struct CnfArgs {
    #[command(flatten)]
    source: CnfSource,
    /// Write the VASS here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the JSON sidecar (primes, clause weights, windows) here.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Coverability of the target from the start to unboundedness.
    Cov2unbound(ReduceArgs),
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Cover,
    Unbounded,
    BoundedCover,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    mode: OracleMode,
    /// Target state for `cover`.
    #[arg(long)]
    to: Option<String>,
    #[command(flatten)]
    objective: ObjectiveArgs,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    input: InputArgs,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<ovass_core::Error> for Failure {
    fn from(e: ovass_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<(String, bool), Failure>;

struct Ctx {
    format: Format,
    parallel: bool,
}

impl Ctx {
    /// Renders a document; text mode starts with `token` when given.
    fn emit<T: Serialize>(&self, token: Option<&str>, doc: &T, text: impl FnOnce(&mut String)) -> String {
        match self.format {
            Format::Json => serde_json::to_string_pretty(doc).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                if let Some(t) = token {
                    out.push_str(t);
                    out.push('\n');
                }
                text(&mut out);
                out
            }
        }
    }
}

fn read_text(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("{input}: {e}")))
    }
}

fn load(input: &InputArgs) -> Result<Vass, Failure> {
    Ok(parse_vass(&read_text(&input.input)?)?)
}

fn start_state(v: &Vass, name: &Option<String>) -> Result<StateId, Failure> {
    match name {
        Some(n) => Ok(v.state_or_err(n)?),
        None => v
            .initial()
            .ok_or_else(|| Failure::Input("no initial state; declare `init` or pass --from".into())),
    }
}

fn target_state(v: &Vass, name: &Option<String>) -> Result<StateId, Failure> {
    match name {
        Some(n) => Ok(v.state_or_err(n)?),
        None => v
            .target()
            .ok_or_else(|| Failure::Input("no target state; declare `target` or pass --to".into())),
    }
}

fn fixpoint_params(a: &CheckArgs, size: usize, parallel: bool) -> Result<FixpointParams, Failure> {
    let mut p = if a.rigorous {
        FixpointParams::rigorous(size)?
    } else if let (Some(k), Some(l)) = (a.k, a.l) {
        FixpointParams::fixed(k, l)
    } else {
        FixpointParams::adaptive(size)
    };
    if let Some(r) = a.max_rounds {
        p = p.with_max_rounds(r);
    }
    let strategy = match a.strategy {
        StrategyArg::Saturating => FixStrategy::Saturating,
        StrategyArg::Staged => FixStrategy::Staged,
    };
    Ok(p.with_strategy(strategy).with_parallel(parallel))
}

fn check(ctx: &Ctx, a: &CheckArgs) -> Run {
    let v = load(&a.input)?;
    let s = start_state(&v, &a.from)?;
    let cover = a.mode == CheckMode::Coverability;
    let t = if cover { Some(target_state(&v, &a.to)?) } else { None };
    let mut rep = CheckReport {
        answer: String::new(),
        mode: if cover { "coverability" } else { "unboundedness" }.into(),
        algo: match a.algo {
            Algo::Fixpoint => "fixpoint",
            Algo::Pareto => "pareto",
            Algo::Oracle => "oracle",
        }
        .into(),
        from: v.name(s).to_string(),
        to: t.map(|t| v.name(t).to_string()),
        fixpoint: None,
        lasso: None,
        oracle: None,
        trace: None,
    };
    let answered = match a.algo {
        Algo::Fixpoint => {
            // the decision procedures normalize internally; this copy sizes
            // the parameters and feeds the trace
            let inst = match t {
                Some(t) => reduce_cov_to_unbound(&v, s, t)?.0,
                None => v.clone(),
            };
            let norm = normalize_guards(&inst)?;
            let params = fixpoint_params(a, norm.num_states(), ctx.parallel)?;
            let d = match t {
                Some(t) => decide_coverability(&v, s, t, Some(params))?,
                None => decide_unboundedness(&v, s, Some(params))?,
            };
            if a.emit_trace {
                let fix = compute_conf_infinity(&norm, &params)?;
                rep.trace = Some(fix.trace.iter().map(|r| TraceRoundReport::new(&norm, r)).collect());
            }
            rep.answer = d.answer.token().into();
            rep.fixpoint = Some(FixpointInfo {
                rounds: d.rounds,
                k: d.k,
                l: d.l,
                distance: d.distance,
                states: d.states,
                bounded_chains: d.bounded_chains,
            });
            d.answer != Answer::Incomplete
        }
        Algo::Pareto => {
            let (inst, inst_start) = match t {
                Some(t) => {
                    if !v.is_guard_free() {
                        return Err(ovass_core::Error::GuardedInput("pareto").into());
                    }
                    reduce_cov_to_unbound(&v, s, t)?
                }
                None => (v.clone(), s),
            };
            let lasso = decide_unbounded_lasso(&inst, inst_start)?;
            rep.answer = Answer::from_bool(lasso.is_some()).token().into();
            rep.lasso = lasso.map(|l| LassoInfo {
                stem: path_names(&inst, &l.stem),
                cycle: path_names(&inst, &l.cycle),
            });
            true
        }
        Algo::Oracle => {
            let caps = a.caps.caps(&v);
            let o = match t {
                Some(t) => oracle_cover(&v, s, t, caps)?,
                None => oracle_unbounded(&v, s, caps)?,
            };
            rep.answer = o.answer.token().into();
            rep.oracle = Some(OracleInfo {
                states_explored: o.states_explored,
                reason: o.reason,
                counter_cap: caps.counter,
                node_cap: caps.nodes,
            });
            o.answer.definite().is_some()
        }
    };
    let out = ctx.emit(Some(&rep.answer), &rep, |o| {
        if let Some(f) = &rep.fixpoint {
            let _ = writeln!(
                o,
                "rounds {} K {} L {} states {} bounded-chains {}",
                f.rounds, f.k, f.l, f.states, f.bounded_chains
            );
            if let Some(d) = f.distance {
                let _ = writeln!(o, "distance {d}");
            }
        }
        if let Some(l) = &rep.lasso {
            let _ = writeln!(o, "stem {}", l.stem.join(","));
            let _ = writeln!(o, "cycle {}", l.cycle.join(","));
        }
        if let Some(x) = &rep.oracle {
            let _ = writeln!(o, "explored {} ({})", x.states_explored, x.reason);
        }
        if let Some(trace) = &rep.trace {
            write_trace(o, trace);
        }
    });
    Ok((out, answered))
}

fn write_trace(o: &mut String, trace: &[TraceRoundReport]) {
    for r in trace {
        let dist = r.distance.map(|d| format!(" distance {d}")).unwrap_or_default();
        let _ = writeln!(o, "round {} K {} L {}{dist}", r.round, r.k, r.l);
        for sv in &r.added {
            let vals: Vec<String> = sv.values.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(o, "  {}: {}", sv.state, vals.join(","));
        }
    }
}

fn objective(v: &Vass, a: &ObjectiveArgs) -> Result<(Configuration, DiseqObjective, usize), Failure> {
    let target = a
        .target
        .as_ref()
        .ok_or_else(|| Failure::Usage("--target is required".into()))?;
    let steps = a.steps.ok_or_else(|| Failure::Usage("--steps is required".into()))?;
    let o = DiseqObjective::new(
        v.state_or_err(target)?,
        a.ell,
        a.period,
        a.not_res.iter().copied(),
        a.not_val.iter().copied(),
    )?;
    if a.counter < 0 {
        return Err(Failure::Input(format!("start counter {} is negative", a.counter)));
    }
    let init = Configuration::new(start_state(v, &a.from)?, a.counter);
    Ok((init, o, steps))
}

fn bounded_cover(ctx: &Ctx, a: &BoundedArgs) -> Run {
    let v = load(&a.input)?;
    let (init, o, steps) = objective(&v, &a.objective)?;
    let out = bounded_cover_search(&v, init, std::slice::from_ref(&o), steps, a.witness)?;
    let rep = BoundedReport {
        answer: Answer::from_bool(out.found()).token().into(),
        steps,
        rounds: out.rounds,
        max_layer: out.max_layer,
        pruned: out.pruned,
        exhausted: out.exhausted,
        hit: out.hit.map(|h| HitReport {
            round: h.round,
            state: v.name(h.config.state).to_string(),
            counter: h.config.counter,
        }),
        witness: out.witness.as_ref().map(|w| path_names(&v, w)),
    };
    let text = ctx.emit(Some(&rep.answer), &rep, |o| {
        let _ = writeln!(o, "rounds {} max-layer {}", rep.rounds, rep.max_layer);
        if let Some(h) = &rep.hit {
            let _ = writeln!(o, "hit ({},{}) after {} steps", h.state, h.counter, h.round);
        }
        if let Some(w) = &rep.witness {
            let _ = writeln!(o, "witness {}", w.join(","));
        }
    });
    Ok((text, true))
}

fn inspect(ctx: &Ctx, a: &InspectArgs) -> Run {
    let v = load(&a.input)?;
    let analysis = CycleAnalysis::with_parallel(&v, ctx.parallel)?;
    let mut cycles = Vec::new();
    for q in analysis.q_plus() {
        let sc = analysis.get(q).expect("state in Q+");
        let sel = &sc.selection;
        let size: u64 = sc
            .roots
            .iter()
            .map(|&r| ((r + sel.pmin) / sel.period + 1).max(0) as u64)
            .sum();
        let blocked = if size <= MAX_BLOCKED_ENUMERATION {
            Some(BlockedReport::from(&blocked_omega(&v, sel)?))
        } else {
            None
        };
        let classes = sc
            .nontrivial_residues()
            .map(|r| ClassReport {
                residue: r,
                roots: sc.class_roots(r).to_vec(),
                chains: sc
                    .chains(r)
                    .iter()
                    .map(|c| ChainReport { lo: c.lo, hi: c.hi })
                    .collect(),
            })
            .collect();
        cycles.push(StateCycleReport {
            state: v.name(q).to_string(),
            gamma: path_names(&v, &sel.gamma),
            period: sel.period,
            pmin: sel.pmin,
            threshold: sel.threshold(),
            blocked_omega: blocked,
            trivial_residues: (0..sel.period).filter(|&r| sc.is_trivial(r)).collect(),
            classes,
        });
    }
    let path = if a.path.is_empty() {
        None
    } else {
        let names: Vec<&str> = a.path.iter().map(String::as_str).collect();
        let p = Path::from_names(&v, &names)?;
        let s = summarize_path(&v, &p)?;
        Some(PathBlockedReport {
            path: path_names(&v, &p),
            pmin: s.pmin,
            smax: s.smax,
            weight: s.weight,
            blocked: BlockedReport::from(&blocked_set(&v, &p)?),
        })
    };
    let u_trace = if a.u_trace {
        let norm = normalize_guards(&v)?;
        let p = FixpointParams::adaptive(norm.num_states())
            .with_strategy(FixStrategy::Staged)
            .with_parallel(ctx.parallel);
        let fix = compute_conf_infinity(&norm, &p)?;
        Some(UTraceReport {
            complete: fix.complete,
            rounds: fix.trace.iter().map(|r| TraceRoundReport::new(&norm, r)).collect(),
            maxima: fix.u.maxima().iter().map(|m| ChainMaxReport::new(&norm, m)).collect(),
        })
    } else {
        None
    };
    let pareto = if a.pareto {
        let levels = build_family_levels(&v, ctx.parallel)?;
        Some(levels.iter().map(|f| ParetoLevelReport::new(&v, f)).collect())
    } else {
        None
    };
    let rep = InspectReport {
        states: v.num_states(),
        transitions: v.num_transitions(),
        normalized: v.is_normalized(),
        q_plus: analysis.q_plus().map(|q| v.name(q).to_string()).collect(),
        cycles,
        path,
        u_trace,
        pareto,
    };
    let text = ctx.emit(None, &rep, |o| write_inspect(o, &rep));
    Ok((text, true))
}

fn fmt_blocked(b: &BlockedReport) -> String {
    let extras: Vec<String> = b.extras.iter().map(|x| x.to_string()).collect();
    format!("[0,{}) + {{{}}}", b.below, extras.join(","))
}

fn write_inspect(o: &mut String, rep: &InspectReport) {
    let _ = writeln!(
        o,
        "states {} transitions {} normalized {}",
        rep.states, rep.transitions, rep.normalized
    );
    let _ = writeln!(o, "Q+ {}", rep.q_plus.join(","));
    for c in &rep.cycles {
        let _ = writeln!(o, "state {}", c.state);
        let _ = writeln!(o, "  gamma {} W {} pmin {}", c.gamma.join(","), c.period, c.pmin);
        match &c.blocked_omega {
            Some(b) => {
                let _ = writeln!(o, "  blocked-omega {}", fmt_blocked(b));
            }
            None => {
                let _ = writeln!(o, "  blocked-omega too large to list");
            }
        }
        let _ = writeln!(o, "  trivial residues {}", c.trivial_residues.len());
        for cl in &c.classes {
            let chains: Vec<String> = cl
                .chains
                .iter()
                .map(|ch| match ch.hi {
                    Some(hi) => format!("{}..{}", ch.lo, hi),
                    None => format!("{}..", ch.lo),
                })
                .collect();
            let _ = writeln!(o, "  residue {}: {}", cl.residue, chains.join(" "));
        }
    }
    if let Some(p) = &rep.path {
        let _ = writeln!(
            o,
            "path {} pmin {} smax {} weight {} blocked {}",
            p.path.join(","),
            p.pmin,
            p.smax,
            p.weight,
            fmt_blocked(&p.blocked)
        );
    }
    if let Some(t) = &rep.u_trace {
        let _ = writeln!(o, "u-trace complete {}", t.complete);
        write_trace(o, &t.rounds);
    }
    if let Some(levels) = &rep.pareto {
        for l in levels {
            let _ = writeln!(o, "pareto level {}", l.level);
            for c in &l.cells {
                let elems: Vec<String> = c
                    .elems
                    .iter()
                    .map(|e| format!("({},{}) {}", e.pmin, e.smax, e.witness.join(",")))
                    .collect();
                let _ = writeln!(o, "  {} -> {}: {}", c.from, c.to, elems.join("; "));
            }
        }
    }
}

fn gen_cnf(ctx: &Ctx, a: &CnfArgs) -> Run {
    let f = match (&a.source.dimacs, &a.source.random) {
        (Some(p), _) => parse_dimacs(&read_text(&p.to_string_lossy())?)?,
        (None, Some(r)) => random_cnf(r[0] as usize, r[1] as usize, r[2])?,
        (None, None) => return Err(Failure::Usage("one of --dimacs or --random is required".into())),
    };
    let (v, meta) = cnf_to_vass(&f)?;
    let text = serialize_vass(&v);
    let side = CnfSidecar {
        num_vars: f.num_vars,
        clauses: f
            .clauses
            .iter()
            .map(|c| c.map(|l| if l.positive { l.var as i64 } else { -(l.var as i64) }))
            .collect(),
        primes: meta.primes,
        product: meta.product,
        clause_weights: meta.clause_weights,
        windows: meta.windows,
        start: "s0".into(),
    };
    if let Some(p) = &a.sidecar {
        std::fs::write(
            p,
            serde_json::to_string_pretty(&side).expect("sidecar serializes") + "\n",
        )?;
    }
    match &a.output {
        Some(p) => {
            std::fs::write(p, &text)?;
            Ok((String::new(), true))
        }
        None if ctx.format == Format::Json => Ok((
            serde_json::to_string_pretty(&side).expect("sidecar serializes") + "\n",
            true,
        )),
        None => Ok((text, true)),
    }
}

fn reduce(ctx: &Ctx, a: &ReduceArgs) -> Run {
    let v = load(&a.input)?;
    let s = start_state(&v, &a.from)?;
    let t = target_state(&v, &a.to)?;
    let (w, start) = reduce_cov_to_unbound(&v, s, t)?;
    let rep = ReduceReport {
        start: w.name(start).to_string(),
        target: w.target().map(|q| w.name(q).to_string()).unwrap_or_default(),
        vass: serialize_vass(&w),
    };
    let text = ctx.emit(None, &rep, |o| o.push_str(&rep.vass));
    Ok((text, true))
}

fn oracle(ctx: &Ctx, a: &OracleArgs) -> Run {
    let v = load(&a.input)?;
    let caps = a.caps.caps(&v);
    let (answer, explored, reason, mode) = match a.mode {
        OracleMode::Cover => {
            let s = start_state(&v, &a.objective.from)?;
            let t = target_state(&v, &a.to)?;
            let o = oracle_cover(&v, s, t, caps)?;
            (o.answer, Some(o.states_explored), o.reason, "cover")
        }
        OracleMode::Unbounded => {
            let s = start_state(&v, &a.objective.from)?;
            let o = oracle_unbounded(&v, s, caps)?;
            (o.answer, Some(o.states_explored), o.reason, "unbounded")
        }
        OracleMode::BoundedCover => {
            let (init, o, steps) = objective(&v, &a.objective)?;
            let found = oracle_bounded_cover(&v, init, &o, steps)?;
            let verdict = if found {
                ovass_core::Verdict::Yes
            } else {
                ovass_core::Verdict::No
            };
            (
                verdict,
                None,
                format!("all runs of at most {steps} steps"),
                "bounded-cover",
            )
        }
    };
    let rep = OracleReport {
        answer: answer.token().into(),
        mode: mode.into(),
        states_explored: explored,
        reason,
        counter_cap: caps.counter,
        node_cap: caps.nodes,
    };
    let text = ctx.emit(Some(&rep.answer), &rep, |o| {
        if let Some(n) = rep.states_explored {
            let _ = writeln!(o, "explored {n}");
        }
        let _ = writeln!(o, "{}", rep.reason);
    });
    Ok((text, answer.definite().is_some()))
}

fn selftest(ctx: &Ctx) -> Run {
    let checks = selftest::run();
    let ok = checks.iter().all(|c| c.passed);
    let rep = SelftestReport {
        answer: if ok { "PASS" } else { "FAIL" }.into(),
        checks,
    };
    let text = ctx.emit(Some(&rep.answer), &rep, |o| {
        for c in &rep.checks {
            let _ = writeln!(o, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
    });
    if ok {
        Ok((text, true))
    } else {
        print!("{text}");
        Err(Failure::Input("golden suite failed".into()))
    }
}

fn threads(cli: &Cli) -> Result<usize, Failure> {
    match cli.threads {
        Some(n) => Ok(n),
        None => match std::env::var("OVASS_THREADS") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("OVASS_THREADS={s} is not a thread count"))),
            Err(_) => Ok(1),
        },
    }
}

fn run(cli: &Cli) -> Run {
    let n = threads(cli)?;
    if n == 0 {
        return Err(Failure::Usage("thread count must be at least 1".into()));
    }
    if n > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let ctx = Ctx {
        format: cli.format,
        parallel: n > 1,
    };
    match &cli.command {
        Command::Check(a) => check(&ctx, a),
        Command::BoundedCover(a) => bounded_cover(&ctx, a),
        Command::Inspect(a) => inspect(&ctx, a),
        Command::Gen(GenCommand::Cnf(a)) => gen_cnf(&ctx, a),
        Command::Reduce(ReduceCommand::Cov2unbound(a)) => reduce(&ctx, a),
        Command::Oracle(a) => oracle(&ctx, a),
        Command::Selftest => selftest(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, answered)) => {
            print!("{out}");
            ExitCode::from(if answered { 0 } else { 3 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Coverability and unboundedness for one-counter vector addition systems
//! with states, with and without disequality guards.
//!
//! The guarded problems are decided by a fixpoint over residue classes and
//! chains of iterated positive cycles ([`fixpoint`]). Guard-free instances
//! can also be decided by the Pareto-set lasso search ([`pareto`]).
//! [`oracle`] provides explicit-state ground truth.

pub mod bounded;
pub mod constants;
pub mod cycles;
pub mod error;
pub mod fixpoint;
pub mod fixtures;
pub mod format;
pub mod gen;
pub mod model;
pub mod normalize;
pub mod oracle;
pub mod pareto;
pub mod reductions;
pub mod summary;

pub use bounded::{decide_bounded_cover, objective_contains, CoverSearch, DiseqObjective};
pub use cycles::{blocked_omega, chains_of, select_cycles, Chain, CycleAnalysis, CycleSelection, ResidueClass};
pub use error::{Error, Result};
pub use fixpoint::{
    compute_conf_infinity, compute_u0, decide_coverability, decide_unboundedness, Answer, Decision, FixpointParams,
    USet,
};
pub use format::{parse_vass, serialize_vass};
pub use model::{lift_run, Configuration, Path, StateId, Transition, TransitionId, Vass};
pub use normalize::normalize_guards;
pub use oracle::{Caps, OracleVerdict, Verdict};
pub use pareto::{decide_cover_pareto, decide_unbounded_lasso, ParetoElem, ParetoFamily};
pub use summary::{blocked_set, summarize_path, BlockedSet, PathSummary};

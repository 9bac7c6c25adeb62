//! Polynomial-time decomposition through bipartite matchings between faults.
//!
//! For a subpath `π'` and a fault `e`, a *base fault* of `e` is the first
//! fault met by some walk between the ends of `π'` that is strictly shorter
//! than `π'` and uses `e`. FaultReduce repeatedly replaces faults that cannot
//! be matched to distinct base faults by their (smaller) set of base faults.

mod audit;
mod fault_reduce;
mod gamma;
mod matching;
mod shortcut;
mod subpaths;

pub use audit::{fs_pair_audit, FsPairAudit};
pub use fault_reduce::{fault_reduce, fault_reduce_between, FaultReduceOutcome};
pub use gamma::{build_gamma, GammaGraph};
pub use matching::{matching_with_witness, neighborhood, MatchingResult};
pub use shortcut::{base_fault_reach, ShortcutIndex, Side};
pub use subpaths::{
    compute_subpaths, compute_subpaths_traced, compute_subpaths_weighted, compute_subpaths_weighted_traced,
    PolyOptions, PolyRun, Probe,
};

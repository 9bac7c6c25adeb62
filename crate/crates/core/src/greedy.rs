//! Oracle-backed greedy decompositions and the additive baseline.
//!
//! Both peel the longest admissible prefix off the remaining path. Every
//! subpath of an admissible subpath is admissible, so a linear scan that
//! stops at the first failure finds the farthest boundary.

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{Edge, FaultSet};
use crate::instance::ReplacementInstance;
use crate::oracle::FaultOracle;

/// Greedy plain decomposition: each boundary is the farthest vertex whose
/// subpath has a minimum fault set of size at most `budget`.
pub fn greedy_decompose(inst: &ReplacementInstance, budget: usize) -> Result<Decomposition> {
    greedy_decompose_with(&FaultOracle::new(inst), budget)
}

pub fn greedy_decompose_with(oracle: &FaultOracle<'_>, budget: usize) -> Result<Decomposition> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let inst = oracle.instance();
    let last = inst.last_index();
    let mut cuts = vec![0];
    let mut sets = Vec::new();
    let mut a = 0;
    if last == 0 {
        return Ok(Decomposition::plain(inst, &[0, 0], vec![FaultSet::new()], budget));
    }
    while a < last {
        if oracle.min_fault_size_at(a, a + 1) > budget {
            return Err(Error::NoProgress(a));
        }
        let mut b = a + 1;
        while b < last && oracle.min_fault_size_at(a, b + 1) <= budget {
            b += 1;
        }
        sets.push(oracle.min_fault_set_at(a, b));
        cuts.push(b);
        a = b;
    }
    Ok(Decomposition::plain(inst, &cuts, sets, budget))
}

/// Greedy interleaved decomposition: the longest admissible (possibly empty)
/// subpath, then the following path edge as a separator, repeated.
pub fn greedy_decompose_weighted(inst: &ReplacementInstance, budget: usize) -> Result<Decomposition> {
    greedy_decompose_weighted_with(&FaultOracle::new(inst), budget)
}

pub fn greedy_decompose_weighted_with(
    oracle: &FaultOracle<'_>,
    budget: usize,
) -> Result<Decomposition> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let inst = oracle.instance();
    let last = inst.last_index();
    let mut ranges = Vec::new();
    let mut sets = Vec::new();
    let mut a = 0;
    loop {
        let mut b = a;
        while b < last && oracle.min_fault_size_at(a, b + 1) <= budget {
            b += 1;
        }
        sets.push(oracle.min_fault_set_at(a, b));
        ranges.push((a, b));
        if b == last {
            break;
        }
        a = b + 1;
    }
    Ok(Decomposition::interleaved(inst, &ranges, sets, budget))
}

/// Additive baseline: remove the first `|F| - k` faults of `order` (canonical
/// edge order when `None`) and peel maximal shortest subpaths in what
/// remains. Every subpath carries those removed faults as its fault set.
pub fn baseline_decompose(
    inst: &ReplacementInstance,
    k: usize,
    order: Option<&[Edge]>,
) -> Result<Decomposition> {
    let f = inst.fault_count();
    if k == 0 || k > f {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={f}")));
    }
    let canonical = inst.faults().to_vec();
    let order = order.unwrap_or(&canonical);
    let as_set: FaultSet = order.iter().copied().collect();
    if order.len() != f || as_set != *inst.faults() {
        return Err(Error::InvalidArgument("order must be a permutation of F".into()));
    }
    let removed: FaultSet = order[..f - k].iter().copied().collect();
    let g = inst.graph();
    let mask = g.mask(&removed)?;
    let last = inst.last_index();
    let mut cuts = vec![0];
    let mut a = 0;
    while a < last {
        if !inst.subpath_shortest_under(&mask, a, a + 1) {
            return Err(Error::NoProgress(a));
        }
        let mut b = a + 1;
        while b < last && inst.subpath_shortest_under(&mask, a, b + 1) {
            b += 1;
        }
        cuts.push(b);
        a = b;
    }
    if last == 0 {
        cuts.push(0);
    }
    let sets = vec![removed; cuts.len() - 1];
    Ok(Decomposition::plain(inst, &cuts, sets, f - k))
}

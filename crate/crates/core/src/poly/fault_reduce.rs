use serde::Serialize;

use super::matching::{matching_with_witness, neighborhood};
use super::shortcut::{ShortcutIndex, Side};
use crate::error::Result;
use crate::graph::{FaultSet, Vertex};
use crate::instance::ReplacementInstance;

/// Result of shrinking `F` for one subpath, with every intermediate set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaultReduceOutcome {
    pub faults: FaultSet,
    /// `F` first, then the set after each exchange; the last entry is `faults`.
    pub trajectory: Vec<FaultSet>,
    /// Which side's matching was deficient at each exchange.
    pub exchanges: Vec<Side>,
}

impl FaultReduceOutcome {
    pub fn iterations(&self) -> usize {
        self.exchanges.len()
    }
}

/// Starts from `F` and, while the generating faults on either side cannot be
/// matched into distinct base faults, swaps a Hall violator `A` for its
/// neighbourhood `N(A)`. Each swap shrinks the set and keeps the subpath
/// between path indices `a <= b` shortest. Left is tried before right.
pub fn fault_reduce(index: &ShortcutIndex<'_>, a: usize, b: usize) -> FaultReduceOutcome {
    let faults = index.faults();
    let f = faults.len();
    // The relation does not depend on the current set, so build it once.
    let relation: Vec<Vec<Vec<usize>>> = Side::BOTH
        .iter()
        .map(|&side| {
            (0..f)
                .map(|i| {
                    (0..f)
                        .filter(|&j| index.is_base_fault(a, b, faults[j], faults[i], side))
                        .collect()
                })
                .collect()
        })
        .collect();

    let to_set = |ids: &[usize]| -> FaultSet { ids.iter().map(|&i| faults[i]).collect() };
    let mut current: Vec<usize> = (0..f).collect();
    let mut trajectory = vec![to_set(&current)];
    let mut exchanges = Vec::new();
    'outer: loop {
        for (s, &side) in Side::BOTH.iter().enumerate() {
            let adj: Vec<Vec<usize>> = current.iter().map(|&i| relation[s][i].clone()).collect();
            let m = matching_with_witness(&adj, f);
            if let Some(violator) = m.violator {
                let removed: Vec<usize> = violator.iter().map(|&x| current[x]).collect();
                let added = neighborhood(&adj, &violator);
                current.retain(|i| !removed.contains(i));
                current.extend(added);
                current.sort_unstable();
                current.dedup();
                let next = to_set(&current);
                debug_assert!(next.len() < trajectory.last().unwrap().len());
                debug_assert!({
                    let inst = index.instance();
                    let mask = inst.graph().mask(&next).expect("subset of F");
                    inst.subpath_shortest_under(&mask, a, b)
                });
                trajectory.push(next);
                exchanges.push(side);
                continue 'outer;
            }
        }
        break;
    }
    FaultReduceOutcome { faults: to_set(&current), trajectory, exchanges }
}

/// [`fault_reduce`] for the subpath between path vertices `a` and `b`.
pub fn fault_reduce_between(inst: &ReplacementInstance, a: Vertex, b: Vertex) -> Result<FaultReduceOutcome> {
    let (i, j) = inst.subpath_positions(a, b)?;
    Ok(fault_reduce(&ShortcutIndex::new(inst), i, j))
}

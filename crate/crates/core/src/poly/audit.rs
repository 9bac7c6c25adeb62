use serde::Serialize;

use super::fault_reduce::fault_reduce;
use super::shortcut::ShortcutIndex;
use crate::decomposition::Decomposition;
use crate::error::Result;
use crate::graph::Weight;
use crate::instance::ReplacementInstance;

/// Fault-set sizes of the subpaths extended by one edge past their end,
/// split by which neighbour they are no longer than.
///
/// Each fault returned by FaultReduce on an extended subpath is matched to a
/// distinct fault of `F`: from the right end when the extended subpath is no
/// longer than the next one, from the left end when it is no longer than the
/// previous one. Counting each size capped at `budget + 1`, both sums stay
/// within `4 |F|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FsPairAudit {
    pub extended_lengths: Vec<Weight>,
    pub extended_sizes: Vec<usize>,
    /// Indices `i <= q - 3` with `L_i <= L_{i+1}`.
    pub next_light: Vec<usize>,
    /// Indices `i >= 1` with `L_i <= L_{i-1}`.
    pub prev_light: Vec<usize>,
    /// Sums of `min(size, budget + 1)` over `next_light` and `prev_light`.
    pub right_pairs: usize,
    pub left_pairs: usize,
    /// The same sums without the cap.
    pub right_pairs_uncapped: usize,
    pub left_pairs_uncapped: usize,
    pub limit: usize,
}

impl FsPairAudit {
    pub fn within_limit(&self) -> bool {
        self.right_pairs <= self.limit && self.left_pairs <= self.limit
    }
}

/// Runs the audit over every subpath but the last of `d`.
pub fn fs_pair_audit(inst: &ReplacementInstance, d: &Decomposition) -> Result<FsPairAudit> {
    let ranges = d.subpath_ranges(inst)?;
    let index = ShortcutIndex::new(inst);
    let q = ranges.len();
    let extended: Vec<(usize, usize)> = ranges.iter().take(q.saturating_sub(1)).map(|&(a, b)| (a, b + 1)).collect();
    let extended_lengths: Vec<Weight> = extended.iter().map(|&(a, b)| inst.subpath_length(a, b)).collect();
    let extended_sizes: Vec<usize> = extended.iter().map(|&(a, b)| fault_reduce(&index, a, b).faults.len()).collect();
    let n = extended.len();
    let next_light: Vec<usize> = (0..n.saturating_sub(1))
        .filter(|&i| extended_lengths[i] <= extended_lengths[i + 1])
        .collect();
    let prev_light: Vec<usize> = (1..n)
        .filter(|&i| extended_lengths[i] <= extended_lengths[i - 1])
        .collect();
    let cap = d.budget + 1;
    let sum = |set: &[usize], cap: usize| set.iter().map(|&i| extended_sizes[i].min(cap)).sum();
    let right_pairs = sum(&next_light, cap);
    let left_pairs = sum(&prev_light, cap);
    let right_pairs_uncapped = sum(&next_light, usize::MAX);
    let left_pairs_uncapped = sum(&prev_light, usize::MAX);
    Ok(FsPairAudit {
        extended_lengths,
        extended_sizes,
        next_light,
        prev_light,
        right_pairs,
        left_pairs,
        right_pairs_uncapped,
        left_pairs_uncapped,
        limit: 4 * inst.fault_count(),
    })
}

//! Exponential-time ground truth.
//!
//! Minimum fault sets are found by enumerating subsets of `F` by size and
//! then lexicographically in canonical edge order, so the answer is unique.
//! Everything here is meant for desk-scale instances (`|F|` up to about 12).

mod verify;

pub use verify::{verify_decomposition, CheckResult, VerifierReport};

use std::collections::HashMap;
use std::sync::Mutex;

use itertools::Itertools;
use serde::Serialize;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeMask, FaultSet, Vertex};
use crate::instance::ReplacementInstance;

/// Memoizing minimum-fault-set oracle over one instance.
///
/// Each `(a, b)` cell is computed at most once; concurrent callers may race
/// on the search but the first stored value wins.
pub struct FaultOracle<'a> {
    inst: &'a ReplacementInstance,
    fault_ids: Vec<EdgeId>,
    memo: Mutex<HashMap<(usize, usize), FaultSet>>,
}

impl<'a> FaultOracle<'a> {
    pub fn new(inst: &'a ReplacementInstance) -> Self {
        let g = inst.graph();
        let fault_ids = inst
            .faults()
            .iter()
            .map(|e| g.edge_id(e).expect("instance faults are graph edges"))
            .collect();
        Self { inst, fault_ids, memo: Mutex::new(HashMap::new()) }
    }

    pub fn instance(&self) -> &'a ReplacementInstance {
        self.inst
    }

    /// Minimum fault set for the subpath between path indices `a <= b`.
    pub fn min_fault_set_at(&self, a: usize, b: usize) -> FaultSet {
        let lower = {
            let memo = self.memo.lock().unwrap();
            if let Some(hit) = memo.get(&(a, b)) {
                return hit.clone();
            }
            // A set that works for a subpath works for every subpath of it.
            let left = (b > a).then(|| memo.get(&(a, b - 1)).map(FaultSet::len)).flatten();
            let right = (b > a).then(|| memo.get(&(a + 1, b)).map(FaultSet::len)).flatten();
            left.unwrap_or(0).max(right.unwrap_or(0))
        };
        let found = self.search(a, b, lower);
        self.memo.lock().unwrap().entry((a, b)).or_insert(found).clone()
    }

    pub fn min_fault_size_at(&self, a: usize, b: usize) -> usize {
        self.min_fault_set_at(a, b).len()
    }

    fn search(&self, a: usize, b: usize, lower: usize) -> FaultSet {
        if a == b {
            return FaultSet::new();
        }
        let g = self.inst.graph();
        let f = self.fault_ids.len();
        let mut mask = EdgeMask::empty(g.edge_count());
        for size in lower..=f {
            for combo in (0..f).combinations(size) {
                for &i in &combo {
                    mask.set(self.fault_ids[i], true);
                }
                let ok = self.inst.subpath_shortest_under(&mask, a, b);
                for &i in &combo {
                    mask.set(self.fault_ids[i], false);
                }
                if ok {
                    return combo.iter().map(|&i| g.edge(self.fault_ids[i])).collect();
                }
            }
        }
        unreachable!("the full fault set keeps every subpath shortest")
    }
}

/// Minimum-cardinality `F' ⊆ F` keeping the path segment from `a` to `b`
/// shortest; ties go to the lexicographically smallest set.
pub fn min_fault_set(inst: &ReplacementInstance, a: Vertex, b: Vertex) -> Result<FaultSet> {
    let (i, j) = inst.subpath_positions(a, b)?;
    Ok(FaultOracle::new(inst).min_fault_set_at(i, j))
}

/// Minimum fault-set sizes for every subpath, plus the min-max partition DP
/// on top of them.
pub struct RestorabilityTable {
    last: usize,
    cost: Vec<Vec<usize>>,
}

impl RestorabilityTable {
    pub fn build(oracle: &FaultOracle<'_>) -> Self {
        let last = oracle.instance().last_index();
        let mut cost = vec![vec![0; last + 1]; last + 1];
        // Right-to-left starts and left-to-right ends let the oracle's memo
        // supply lower bounds from both neighbouring cells.
        for a in (0..=last).rev() {
            for (b, slot) in cost[a].iter_mut().enumerate().skip(a) {
                *slot = oracle.min_fault_size_at(a, b);
            }
        }
        Self { last, cost }
    }

    /// Minimum fault-set size of the subpath between indices `a <= b`.
    pub fn cost(&self, a: usize, b: usize) -> usize {
        self.cost[a][b]
    }

    /// Smallest `r` such that the path splits into `q` subpaths (empty ones
    /// allowed) each needing at most `r` faults, with the cut indices.
    pub fn optimal_partition(&self, q: usize) -> (usize, Vec<usize>) {
        assert!(q >= 1);
        let n = self.last + 1;
        let mut best: Vec<Vec<usize>> = vec![self.cost[0].clone()];
        let mut arg: Vec<Vec<usize>> = vec![vec![0; n]];
        for c in 1..q {
            let prev = &best[c - 1];
            let mut row = vec![usize::MAX; n];
            let mut row_arg = vec![0; n];
            for j in 0..n {
                for (i, &p) in prev.iter().enumerate().take(j + 1) {
                    let v = p.max(self.cost[i][j]);
                    if v < row[j] {
                        row[j] = v;
                        row_arg[j] = i;
                    }
                }
            }
            best.push(row);
            arg.push(row_arg);
        }
        let mut cuts = vec![self.last];
        let mut j = self.last;
        for c in (1..q).rev() {
            j = arg[c][j];
            cuts.push(j);
        }
        cuts.push(0);
        cuts.reverse();
        (best[q - 1][self.last], cuts)
    }

    pub fn r_min(&self, q: usize) -> usize {
        self.optimal_partition(q).0
    }

    /// `r_min(q)` for `q = 1..=q_max`.
    pub fn frontier(&self, q_max: usize) -> Vec<usize> {
        (1..=q_max).map(|q| self.r_min(q)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestorabilityVerdict {
    pub q: usize,
    pub r: usize,
    pub restorable: bool,
    /// Minimum over all `q`-partitions of the largest subpath minimum fault set.
    pub r_min: usize,
    pub witness: Option<Decomposition>,
}

/// Exact decision whether the instance's path splits into `q` subpaths each
/// needing at most `r` faults.
pub fn restorable_check(inst: &ReplacementInstance, q: usize, r: usize) -> Result<RestorabilityVerdict> {
    let oracle = FaultOracle::new(inst);
    let table = RestorabilityTable::build(&oracle);
    restorable_check_with(&oracle, &table, q, r)
}

pub fn restorable_check_with(
    oracle: &FaultOracle<'_>,
    table: &RestorabilityTable,
    q: usize,
    r: usize,
) -> Result<RestorabilityVerdict> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let inst = oracle.instance();
    let (r_min, cuts) = table.optimal_partition(q);
    let restorable = r_min <= r;
    let witness = restorable.then(|| {
        let mut kept = cuts.clone();
        kept.dedup();
        if kept.len() == 1 {
            kept.push(kept[0]);
        }
        let sets = kept.windows(2).map(|w| oracle.min_fault_set_at(w[0], w[1])).collect();
        Decomposition::plain(inst, &kept, sets, r)
    });
    Ok(RestorabilityVerdict { q, r, restorable, r_min, witness })
}

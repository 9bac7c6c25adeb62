use std::collections::HashMap;

use serde::Serialize;

use super::fault_reduce::{fault_reduce, FaultReduceOutcome};
use super::shortcut::ShortcutIndex;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::instance::ReplacementInstance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PolyOptions {
    /// Extend each subpath one vertex at a time instead of binary searching.
    /// Slower, but each boundary is then the first failure of the test.
    pub linear_scan: bool,
}

/// One FaultReduce call made while choosing boundaries.
#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub start: usize,
    pub end: usize,
    pub outcome: FaultReduceOutcome,
}

#[derive(Clone, Debug)]
pub struct PolyRun {
    pub decomposition: Decomposition,
    /// Every distinct probe, in the order first made.
    pub probes: Vec<Probe>,
}

/// Polynomial-time decomposition into subpaths with fault sets of size at
/// most `floor(|F| / k)`, built by FaultReduce. Requires `1 <= k <= |F|`.
pub fn compute_subpaths(inst: &ReplacementInstance, k: usize) -> Result<Decomposition> {
    compute_subpaths_traced(inst, k, PolyOptions::default()).map(|r| r.decomposition)
}

/// Interleaved variant: subpaths may be empty and consecutive subpaths are
/// joined by one separator edge.
pub fn compute_subpaths_weighted(inst: &ReplacementInstance, k: usize) -> Result<Decomposition> {
    compute_subpaths_weighted_traced(inst, k, PolyOptions::default()).map(|r| r.decomposition)
}

struct Prober<'a> {
    index: ShortcutIndex<'a>,
    budget: usize,
    cache: HashMap<(usize, usize), usize>,
    probes: Vec<Probe>,
}

impl<'a> Prober<'a> {
    fn new(inst: &'a ReplacementInstance, k: usize) -> Result<Self> {
        let f = inst.fault_count();
        if k == 0 || k > f {
            return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={f}")));
        }
        Ok(Self { index: ShortcutIndex::new(inst), budget: f / k, cache: HashMap::new(), probes: Vec::new() })
    }

    fn outcome(&mut self, a: usize, b: usize) -> &FaultReduceOutcome {
        let slot = match self.cache.get(&(a, b)) {
            Some(&i) => i,
            None => {
                let outcome = fault_reduce(&self.index, a, b);
                self.probes.push(Probe { start: a, end: b, outcome });
                self.cache.insert((a, b), self.probes.len() - 1);
                self.probes.len() - 1
            }
        };
        &self.probes[slot].outcome
    }

    fn feasible(&mut self, a: usize, b: usize) -> bool {
        let budget = self.budget;
        self.outcome(a, b).faults.len() <= budget
    }

    // Largest end in `lo..hi` reachable from `a`, given that `lo` is feasible.
    fn farthest(&mut self, a: usize, mut lo: usize, mut hi: usize, linear: bool) -> usize {
        if linear {
            while lo + 1 < hi && self.feasible(a, lo + 1) {
                lo += 1;
            }
            return lo;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.feasible(a, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    fn finish(self, decomposition: Decomposition) -> PolyRun {
        PolyRun { decomposition, probes: self.probes }
    }
}

pub fn compute_subpaths_traced(inst: &ReplacementInstance, k: usize, opts: PolyOptions) -> Result<PolyRun> {
    let mut prober = Prober::new(inst, k)?;
    let budget = prober.budget;
    let last = inst.last_index();
    if last == 0 {
        let sets = vec![prober.outcome(0, 0).faults.clone()];
        return Ok(prober.finish(Decomposition::plain(inst, &[0, 0], sets, budget)));
    }
    let mut cuts = vec![0];
    let mut sets = Vec::new();
    let mut a = 0;
    while a < last {
        if !prober.feasible(a, a + 1) {
            return Err(Error::NoProgress(a));
        }
        let b = prober.farthest(a, a + 1, last + 1, opts.linear_scan);
        sets.push(prober.outcome(a, b).faults.clone());
        cuts.push(b);
        a = b;
    }
    Ok(prober.finish(Decomposition::plain(inst, &cuts, sets, budget)))
}

pub fn compute_subpaths_weighted_traced(
    inst: &ReplacementInstance,
    k: usize,
    opts: PolyOptions,
) -> Result<PolyRun> {
    let mut prober = Prober::new(inst, k)?;
    let budget = prober.budget;
    let last = inst.last_index();
    let mut ranges = Vec::new();
    let mut sets = Vec::new();
    let mut a = 0;
    loop {
        let b = prober.farthest(a, a, last + 1, opts.linear_scan);
        sets.push(prober.outcome(a, b).faults.clone());
        ranges.push((a, b));
        if b == last {
            break;
        }
        a = b + 1;
    }
    Ok(prober.finish(Decomposition::interleaved(inst, &ranges, sets, budget)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, FaultSet, Graph, Path};
    use crate::oracle::verify_decomposition;

    fn edge(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn heavy_middle() -> ReplacementInstance {
        let g = Graph::weighted(
            6,
            [(0, 1, 1), (1, 2, 10), (2, 3, 1), (1, 4, 1), (4, 2, 1), (1, 5, 1), (5, 2, 1)],
        )
        .unwrap();
        let f: FaultSet = [edge(1, 4), edge(1, 5)].into_iter().collect();
        ReplacementInstance::new(g, f, Path::new(vec![0, 1, 2, 3])).unwrap()
    }

    #[test]
    fn heavy_edge_is_skipped_by_a_separator() {
        let inst = heavy_middle();
        for linear_scan in [false, true] {
            let run = compute_subpaths_weighted_traced(&inst, 2, PolyOptions { linear_scan }).unwrap();
            let d = run.decomposition;
            assert_eq!(d.budget, 1);
            assert_eq!(d.separators, vec![edge(1, 2)]);
            assert_eq!(d.boundaries, vec![0, 2, 3]);
            assert!(verify_decomposition(&inst, &d, 1).passed);
        }
        assert!(matches!(compute_subpaths(&inst, 2), Err(Error::NoProgress(1))));
    }

    #[test]
    fn k_must_be_in_range() {
        let inst = heavy_middle();
        assert!(compute_subpaths(&inst, 0).is_err());
        assert!(compute_subpaths(&inst, 3).is_err());
        let d = compute_subpaths_weighted(&inst, 1).unwrap();
        assert_eq!(d.q, 1);
    }

    #[test]
    fn probes_are_not_repeated() {
        let g = Graph::unweighted(8, (0..7).map(|i| (i, i + 1)).chain([(0, 7)])).unwrap();
        let f: FaultSet = [edge(0, 7)].into_iter().collect();
        let inst = ReplacementInstance::from_endpoints(g, f, 0, 4).unwrap();
        let run = compute_subpaths_traced(&inst, 1, PolyOptions::default()).unwrap();
        assert_eq!(run.decomposition.q, 1);
        let mut seen: Vec<_> = run.probes.iter().map(|p| (p.start, p.end)).collect();
        let n = seen.len();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), n);
    }
}

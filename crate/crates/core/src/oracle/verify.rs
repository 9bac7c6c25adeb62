use serde::Serialize;

use crate::decomposition::Decomposition;
use crate::graph::{is_shortest, Edge};
use crate::instance::ReplacementInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Outcome of [`verify_decomposition`]: one entry per check that ran.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifierReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifierReport {
    fn record(&mut self, check: &str, failures: Vec<String>) -> bool {
        let passed = failures.is_empty();
        self.checks.push(CheckResult { check: check.to_string(), passed, failures });
        self.passed = self.checks.iter().all(|c| c.passed);
        passed
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }

    /// Adds a `subpath_count` check against `limit`.
    pub fn require_count_at_most(&mut self, d: &Decomposition, limit: usize) {
        let failures = if d.q > limit {
            vec![format!("{} subpaths exceed the bound {limit}", d.q)]
        } else {
            vec![]
        };
        self.record("subpath_count", failures);
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.checks
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| (c.check.as_str(), f.as_str())))
    }
}

/// Checks a decomposition against the instance from first principles:
/// boundary placement, separator edges, `F_i ⊆ F`, `|F_i| <= budget`, and
/// that every subpath is shortest once its `F_i` is removed.
pub fn verify_decomposition(
    inst: &ReplacementInstance,
    d: &Decomposition,
    budget: usize,
) -> VerifierReport {
    let mut report = VerifierReport { passed: true, checks: Vec::new() };
    let path = inst.path().vertices();

    let mut structure = Vec::new();
    if d.q == 0 {
        structure.push("q must be at least 1".to_string());
    }
    if d.boundaries.len() != d.q + 1 {
        structure.push(format!("{} boundaries for q = {}", d.boundaries.len(), d.q));
    }
    if d.fault_sets.len() != d.q {
        structure.push(format!("{} fault sets for q = {}", d.fault_sets.len(), d.q));
    }
    let interleaved = !d.separators.is_empty();
    if interleaved && d.separators.len() + 1 != d.q {
        structure.push(format!("{} separators for q = {}", d.separators.len(), d.q));
    }
    if !report.record("structure", structure) {
        return report;
    }

    let mut boundary_failures = Vec::new();
    let mut pos = Vec::with_capacity(d.boundaries.len());
    for &x in &d.boundaries {
        match path.iter().position(|&v| v == x) {
            Some(i) => pos.push(i),
            None => boundary_failures.push(format!("boundary {x} is not on the path")),
        }
    }
    if boundary_failures.is_empty() {
        if pos[0] != 0 {
            boundary_failures.push(format!("first boundary {} is not s", d.boundaries[0]));
        }
        if *pos.last().unwrap() != path.len() - 1 {
            boundary_failures.push(format!(
                "last boundary {} is not t",
                d.boundaries.last().unwrap()
            ));
        }
        for (i, w) in pos.windows(2).enumerate() {
            let needs_edge = interleaved && i + 1 < d.q;
            if w[1] < w[0] || (needs_edge && w[1] == w[0]) {
                boundary_failures.push(format!(
                    "boundaries {} and {} are out of order",
                    d.boundaries[i],
                    d.boundaries[i + 1]
                ));
            }
        }
    }
    if !report.record("boundaries", boundary_failures) {
        return report;
    }

    let mut separator_failures = Vec::new();
    if interleaved {
        for (i, sep) in d.separators.iter().enumerate() {
            let j = pos[i + 1];
            let expected = Edge::new(path[j - 1], path[j]).expect("simple path");
            if *sep != expected {
                separator_failures.push(format!(
                    "separator {i} is {sep}, expected the path edge {expected}"
                ));
            }
        }
    }
    report.record("separators", separator_failures);

    let subset_failures = d
        .fault_sets
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_subset(inst.faults()))
        .map(|(i, _)| format!("fault set {i} is not a subset of F"))
        .collect();
    report.record("fault_subset", subset_failures);

    let budget_failures = d
        .fault_sets
        .iter()
        .enumerate()
        .filter(|(_, f)| f.len() > budget)
        .map(|(i, f)| format!("fault set {i} has {} faults, budget is {budget}", f.len()))
        .collect();
    report.record("fault_budget", budget_failures);

    let mut shortest_failures = Vec::new();
    for (i, faults) in d.fault_sets.iter().enumerate() {
        let (a, b) = if interleaved && i + 1 < d.q {
            (pos[i], pos[i + 1] - 1)
        } else {
            (pos[i], pos[i + 1])
        };
        let sub = inst.subpath(a, b);
        match is_shortest(inst.graph(), faults, &sub) {
            Ok(true) => {}
            Ok(false) => shortest_failures.push(format!(
                "subpath {i} ({} to {}) is not shortest under its fault set",
                path[a], path[b]
            )),
            Err(e) => shortest_failures.push(format!("subpath {i}: {e}")),
        }
    }
    report.record("subpaths_shortest", shortest_failures);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{FaultSet, Graph, Path};

    fn chord_instance() -> ReplacementInstance {
        let g = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let f: FaultSet = [Edge::new(0, 3).unwrap()].into_iter().collect();
        ReplacementInstance::new(g, f, Path::new(vec![0, 1, 2, 3])).unwrap()
    }

    fn trivial(inst: &ReplacementInstance) -> Decomposition {
        Decomposition {
            boundaries: vec![inst.s(), inst.t()],
            fault_sets: vec![inst.faults().clone()],
            separators: vec![],
            q: 1,
            budget: inst.fault_count(),
        }
    }

    #[test]
    fn trivial_decomposition_passes() {
        let inst = chord_instance();
        let report = verify_decomposition(&inst, &trivial(&inst), 1);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn budget_below_fault_set_fails() {
        let inst = chord_instance();
        let report = verify_decomposition(&inst, &trivial(&inst), 0);
        assert!(!report.passed);
        assert!(!report.check("fault_budget").unwrap().passed);
        assert!(report.check("subpaths_shortest").unwrap().passed);
    }

    #[test]
    fn dropped_fault_breaks_shortestness() {
        let inst = chord_instance();
        let mut d = trivial(&inst);
        d.fault_sets[0] = FaultSet::new();
        let report = verify_decomposition(&inst, &d, 1);
        assert!(!report.check("subpaths_shortest").unwrap().passed);
    }

    #[test]
    fn boundaries_must_span_the_path() {
        let inst = chord_instance();
        let mut d = trivial(&inst);
        d.boundaries = vec![0, 2];
        let report = verify_decomposition(&inst, &d, 1);
        assert!(!report.check("boundaries").unwrap().passed);

        d.boundaries = vec![0, 7];
        assert!(!verify_decomposition(&inst, &d, 1).passed);
    }

    #[test]
    fn structure_mismatch_stops_early() {
        let inst = chord_instance();
        let mut d = trivial(&inst);
        d.q = 2;
        let report = verify_decomposition(&inst, &d, 1);
        assert!(!report.passed);
        assert_eq!(report.checks.len(), 1);
    }

    #[test]
    fn separators_must_be_path_edges() {
        let inst = chord_instance();
        let d = Decomposition {
            boundaries: vec![0, 2, 3],
            fault_sets: vec![FaultSet::new(), FaultSet::new()],
            separators: vec![Edge::new(1, 2).unwrap()],
            q: 2,
            budget: 0,
        };
        assert!(verify_decomposition(&inst, &d, 0).passed);
        let mut bad = d.clone();
        bad.separators = vec![Edge::new(0, 1).unwrap()];
        let report = verify_decomposition(&inst, &bad, 0);
        assert!(!report.check("separators").unwrap().passed);
    }

    #[test]
    fn foreign_fault_is_rejected() {
        let inst = chord_instance();
        let mut d = trivial(&inst);
        d.fault_sets[0].insert(Edge::new(1, 2).unwrap());
        let report = verify_decomposition(&inst, &d, 5);
        assert!(!report.check("fault_subset").unwrap().passed);
        assert!(!report.check("subpaths_shortest").unwrap().passed);
    }
}

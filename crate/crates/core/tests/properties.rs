mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use restoration::io::{instance_from_json, instance_to_json, parse_faults, parse_graph, write_faults, write_graph};
use restoration::oracle::{restorable_check_with, FaultOracle, RestorabilityTable};
use restoration::poly::{
    build_gamma, compute_subpaths_traced, compute_subpaths_weighted_traced, fault_reduce, fs_pair_audit,
    PolyOptions, ShortcutIndex, Side,
};
use restoration::random::{random_graph, sample_instance, FaultModel};
use restoration::{
    baseline_decompose, distances, greedy_decompose, greedy_decompose_weighted, is_shortest, shortest_path,
    verify_decomposition, Decomposition, FaultSet, Path, ReplacementInstance,
};

fn build(seed: u64, n: usize, f: usize, weighted: bool, hitting: bool) -> Option<ReplacementInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (3.0 / n as f64).min(0.9);
    let g = random_graph(&mut rng, n, p, weighted.then_some(6)).ok()?;
    let f = f.min(g.edge_count());
    let model = if hitting { FaultModel::PathHitting } else { FaultModel::Uniform };
    sample_instance(&mut rng, g, f, model, None).ok()
}

prop_compose! {
    fn instance(max_n: usize, max_f: usize, weighted: bool)
        (seed in any::<u64>(), n in 4..=max_n, f in 1..=max_f, hitting in any::<bool>())
        -> Option<ReplacementInstance>
    {
        build(seed, n, f, weighted, hitting)
    }
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Fewest pieces of the path that are each shortest once `removed` is gone.
fn fewest_shortest_pieces(inst: &ReplacementInstance, removed: &FaultSet) -> usize {
    let path = inst.path().vertices();
    let last = path.len() - 1;
    let mut best = vec![usize::MAX; last + 1];
    best[0] = 0;
    for b in 1..=last {
        for a in 0..b {
            if best[a] != usize::MAX && common::is_shortest_under(inst.graph(), removed, &path[a..=b]) {
                best[b] = best[b].min(best[a] + 1);
            }
        }
    }
    best[last].max(1)
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn distances_match_reference_and_are_symmetric(inst in instance(16, 5, true)) {
        let Some(inst) = inst else { return Ok(()) };
        let g = inst.graph();
        let none = FaultSet::new();
        for removed in [&none, inst.faults()] {
            let rows: Vec<_> = (0..g.vertex_count()).map(|v| distances(g, removed, v).unwrap()).collect();
            for (u, row) in rows.iter().enumerate() {
                prop_assert_eq!(row, &common::dijkstra(g, removed, u));
                for v in 0..g.vertex_count() {
                    prop_assert_eq!(row[v], rows[v][u]);
                }
            }
        }
        // Removing more edges never shortens a distance.
        let s = inst.s();
        let all = distances(g, &none, s).unwrap();
        let masked = distances(g, inst.faults(), s).unwrap();
        for (a, b) in all.iter().zip(&masked) {
            if let (Some(a), Some(b)) = (a, b) {
                prop_assert!(a <= b);
            }
        }
    }

    #[test]
    fn every_subpath_of_a_shortest_path_is_shortest(inst in instance(16, 5, true)) {
        let Some(inst) = inst else { return Ok(()) };
        let p = shortest_path(inst.graph(), inst.faults(), inst.s(), inst.t()).unwrap();
        prop_assert_eq!(&p, inst.path());
        let v = p.vertices();
        for a in 0..v.len() {
            for b in a..v.len() {
                prop_assert!(is_shortest(inst.graph(), inst.faults(), &Path::new(v[a..=b].to_vec())).unwrap());
            }
        }
    }

    #[test]
    fn oracle_sets_are_minimum(inst in instance(12, 5, true)) {
        let Some(inst) = inst else { return Ok(()) };
        let oracle = FaultOracle::new(&inst);
        let path = inst.path().vertices();
        for a in 0..path.len() {
            for b in a..path.len() {
                let set = oracle.min_fault_set_at(a, b);
                prop_assert!(set.is_subset(inst.faults()));
                prop_assert!(common::is_shortest_under(inst.graph(), &set, &path[a..=b]));
                prop_assert_eq!(set.len(), common::brute_min_fault_size(inst.graph(), inst.faults(), &path[a..=b]));
            }
        }
    }

    #[test]
    fn restorability_is_monotone(inst in instance(14, 5, false)) {
        let Some(inst) = inst else { return Ok(()) };
        let f = inst.fault_count();
        let oracle = FaultOracle::new(&inst);
        let table = RestorabilityTable::build(&oracle);
        let frontier = table.frontier(f + 2);
        prop_assert!(frontier.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(frontier[0], oracle.min_fault_size_at(0, inst.last_index()));
        // Every instance splits into f + 1 subpaths shortest in G itself.
        prop_assert_eq!(frontier[f], 0);
        for q in 1..=f + 1 {
            for r in 0..=f {
                let v = restorable_check_with(&oracle, &table, q, r).unwrap();
                if v.restorable {
                    prop_assert!(restorable_check_with(&oracle, &table, q + 1, r).unwrap().restorable);
                    prop_assert!(restorable_check_with(&oracle, &table, q, r + 1).unwrap().restorable);
                    let w = v.witness.unwrap();
                    prop_assert!(w.q <= q);
                    prop_assert!(verify_decomposition(&inst, &w, r).passed);
                } else {
                    prop_assert!(v.witness.is_none());
                }
            }
        }
    }

    #[test]
    fn greedy_is_maximal_and_uses_fewest_subpaths(inst in instance(16, 6, false), k in 1usize..=4) {
        let Some(inst) = inst else { return Ok(()) };
        let f = inst.fault_count();
        prop_assume!(k <= f);
        let budget = f / k;
        let oracle = FaultOracle::new(&inst);
        let d = greedy_decompose(&inst, budget).unwrap();
        prop_assert!(verify_decomposition(&inst, &d, budget).passed);
        let ranges = d.subpath_ranges(&inst).unwrap();
        for &(a, b) in &ranges[..ranges.len() - 1] {
            prop_assert!(oracle.min_fault_size_at(a, b + 1) > budget);
        }
        for (set, &(a, b)) in d.fault_sets.iter().zip(&ranges) {
            prop_assert_eq!(set, &oracle.min_fault_set_at(a, b));
        }
        let table = RestorabilityTable::build(&oracle);
        let fewest = (1..=inst.last_index().max(1)).find(|&q| table.r_min(q) <= budget).unwrap();
        prop_assert_eq!(d.q, fewest);
    }

    #[test]
    fn poly_is_valid_and_never_beats_greedy(inst in instance(20, 6, false), k in 1usize..=4, linear_scan in any::<bool>()) {
        let Some(inst) = inst else { return Ok(()) };
        let f = inst.fault_count();
        prop_assume!(k <= f);
        let budget = f / k;
        let run = compute_subpaths_traced(&inst, k, PolyOptions { linear_scan }).unwrap();
        let d = &run.decomposition;
        prop_assert_eq!(d.budget, budget);
        prop_assert!(verify_decomposition(&inst, d, budget).passed);
        prop_assert!(d.q <= 8 * k + 1);
        let greedy = greedy_decompose(&inst, budget).unwrap();
        prop_assert!(greedy.q <= d.q);

        let index = ShortcutIndex::new(&inst);
        let ranges = d.subpath_ranges(&inst).unwrap();
        for &(a, b) in &ranges[..ranges.len() - 1] {
            prop_assert!(fault_reduce(&index, a, b + 1).faults.len() > budget);
        }
        let audit = fs_pair_audit(&inst, d).unwrap();
        prop_assert!(audit.within_limit(), "{:?}", audit);
    }

    #[test]
    fn fault_reduce_is_valid_and_saturated(inst in instance(14, 5, true)) {
        let Some(inst) = inst else { return Ok(()) };
        let oracle = FaultOracle::new(&inst);
        let index = ShortcutIndex::new(&inst);
        let path = inst.path().vertices();
        for a in 0..path.len() {
            for b in a..path.len() {
                let out = fault_reduce(&index, a, b);
                prop_assert!(common::is_shortest_under(inst.graph(), &out.faults, &path[a..=b]));
                prop_assert!(out.faults.len() >= oracle.min_fault_size_at(a, b));
                prop_assert!(out.iterations() <= inst.fault_count());
                for side in Side::BOTH {
                    let gamma = build_gamma(&index, a, b, &out.faults, side);
                    prop_assert!(gamma.matching().saturating);
                }
            }
        }
    }

    #[test]
    fn baseline_uses_fewest_pieces(inst in instance(18, 6, false), k in 1usize..=6) {
        let Some(inst) = inst else { return Ok(()) };
        let f = inst.fault_count();
        prop_assume!(k <= f);
        let d = baseline_decompose(&inst, k, None).unwrap();
        prop_assert!(d.q <= k + 1);
        let removed: FaultSet = inst.faults().iter().take(f - k).copied().collect();
        prop_assert!(d.fault_sets.iter().all(|s| *s == removed));
        prop_assert!(verify_decomposition(&inst, &d, f - k).passed);
        prop_assert_eq!(d.q, fewest_shortest_pieces(&inst, &removed));

        let mut reversed = inst.faults().to_vec();
        reversed.reverse();
        let other = baseline_decompose(&inst, k, Some(&reversed)).unwrap();
        prop_assert!(other.q <= k + 1);
        prop_assert!(verify_decomposition(&inst, &other, f - k).passed);
    }

    #[test]
    fn weighted_forms_alternate(inst in instance(18, 6, true), k in 1usize..=4) {
        let Some(inst) = inst else { return Ok(()) };
        let f = inst.fault_count();
        prop_assume!(k <= f);
        let budget = f / k;
        let run = compute_subpaths_weighted_traced(&inst, k, PolyOptions::default()).unwrap();
        let greedy = greedy_decompose_weighted(&inst, budget).unwrap();
        for d in [&run.decomposition, &greedy] {
            prop_assert_eq!(d.separators.len() + 1, d.q);
            prop_assert!(verify_decomposition(&inst, d, budget).passed);
            prop_assert!(d.q <= 8 * k + 1);
        }
        prop_assert!(greedy.q <= run.decomposition.q);
        let audit = fs_pair_audit(&inst, &run.decomposition).unwrap();
        prop_assert!(audit.within_limit(), "{:?}", audit);
    }

    #[test]
    fn unit_weights_in_separator_form(inst in instance(18, 6, false), k in 1usize..=4) {
        let Some(inst) = inst else { return Ok(()) };
        prop_assume!(k <= inst.fault_count());
        let budget = inst.fault_count() / k;
        let run = compute_subpaths_weighted_traced(&inst, k, PolyOptions::default()).unwrap();
        prop_assert!(verify_decomposition(&inst, &run.decomposition, budget).passed);
    }

    #[test]
    fn formats_round_trip(inst in instance(16, 5, true), k in 1usize..=3) {
        let Some(inst) = inst else { return Ok(()) };
        let g = inst.graph();
        let g2 = parse_graph(&write_graph(g)).unwrap();
        prop_assert_eq!(&g2, g);
        prop_assert_eq!(&parse_faults(&write_faults(inst.faults(), g), g).unwrap(), inst.faults());
        let json = instance_to_json(&inst).unwrap();
        prop_assert_eq!(instance_to_json(&instance_from_json(&json).unwrap()).unwrap(), json);
        prop_assume!(k <= inst.fault_count());
        let d = compute_subpaths_weighted_traced(&inst, k, PolyOptions::default()).unwrap().decomposition;
        prop_assert_eq!(Decomposition::from_json(&d.to_json().unwrap()).unwrap(), d);
    }
}

//! Independent reference implementations and test corpora.
//!
//! Nothing here calls the library's search or matching code; it only reads
//! the graph's edge list.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use restoration::lowerbound::{gen_glued, gen_glued_mixed, gen_single, gen_single_odd};
use restoration::random::{grid_graph, random_graph, sample_instance, FaultModel};
use restoration::{Edge, FaultSet, Graph, ReplacementInstance};

/// Plain Dijkstra over the edge list with `removed` skipped.
pub fn dijkstra(g: &Graph, removed: &FaultSet, s: usize) -> Vec<Option<u64>> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (e, w) in g.edges() {
        if !removed.contains(&e) {
            adj[e.u()].push((e.v(), w));
            adj[e.v()].push((e.u(), w));
        }
    }
    let mut dist = vec![None; n];
    let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].is_some() {
            continue;
        }
        dist[v] = Some(d);
        for &(x, w) in &adj[v] {
            if dist[x].is_none() {
                heap.push(Reverse((d + w, x)));
            }
        }
    }
    dist
}

pub fn walk_length(g: &Graph, vertices: &[usize]) -> u64 {
    vertices
        .windows(2)
        .map(|w| g.weight(&Edge::new(w[0], w[1]).unwrap()).expect("path edge"))
        .sum()
}

/// Whether the vertex sequence is a shortest path in `g` minus `removed`.
pub fn is_shortest_under(g: &Graph, removed: &FaultSet, vertices: &[usize]) -> bool {
    if vertices.windows(2).any(|w| {
        let e = Edge::new(w[0], w[1]).unwrap();
        !g.contains_edge(&e) || removed.contains(&e)
    }) {
        return false;
    }
    let d = dijkstra(g, removed, vertices[0]);
    d[*vertices.last().unwrap()] == Some(walk_length(g, vertices))
}

/// Minimum size of a subset of `F` keeping `vertices` shortest, by trying
/// every subset.
pub fn brute_min_fault_size(g: &Graph, faults: &FaultSet, vertices: &[usize]) -> usize {
    let all = faults.to_vec();
    let mut best = all.len();
    for mask in 0u32..(1 << all.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let subset: FaultSet = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        if is_shortest_under(g, &subset, vertices) {
            best = size;
        }
    }
    best
}

/// Shortest walk from `from` to `to` whose first edge of `faults` is `first`
/// and which also uses `through`, by Dijkstra over (vertex, phase):
/// phase 0 has met no fault, phase 1 has met `first` but not `through`,
/// phase 2 has met both.
pub fn product_state_distance(
    g: &Graph,
    faults: &FaultSet,
    from: usize,
    to: usize,
    first: Edge,
    through: Edge,
) -> Option<u64> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (e, w) in g.edges() {
        adj[e.u()].push((e.v(), e, w));
        adj[e.v()].push((e.u(), e, w));
    }
    let mut dist = vec![[None::<u64>; 3]; n];
    let mut heap = BinaryHeap::from([Reverse((0u64, from, 0usize))]);
    while let Some(Reverse((d, v, phase))) = heap.pop() {
        if dist[v][phase].is_some() {
            continue;
        }
        dist[v][phase] = Some(d);
        for &(x, e, w) in &adj[v] {
            let next = match phase {
                0 if e == first => {
                    if first == through {
                        2
                    } else {
                        1
                    }
                }
                0 if faults.contains(&e) => continue,
                0 => 0,
                1 if e == through => 2,
                p => p,
            };
            if dist[x][next].is_none() {
                heap.push(Reverse((d + w, x, next)));
            }
        }
    }
    dist[to][2]
}

/// Maximum bipartite matching size by unit-capacity max flow with BFS
/// augmenting paths on an explicit residual network.
pub fn max_flow_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let left = adj.len();
    let (source, sink) = (left + right, left + right + 1);
    let nodes = left + right + 2;
    let mut cap = vec![vec![0i32; nodes]; nodes];
    for (x, ys) in adj.iter().enumerate() {
        cap[source][x] = 1;
        for &y in ys {
            cap[x][left + y] = 1;
        }
    }
    for y in 0..right {
        cap[left + y][sink] = 1;
    }
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; nodes];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for u in 0..nodes {
                if parent[u] == usize::MAX && cap[v][u] > 0 {
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut v = sink;
        while v != source {
            let p = parent[v];
            cap[p][v] -= 1;
            cap[v][p] += 1;
            v = p;
        }
        flow += 1;
    }
}

/// Seeded unweighted (or weighted, lengths `1..=10`) instances on at most 40
/// vertices with `1..=8` faults, mixing random and grid graphs and both
/// fault models.
pub fn random_corpus(seed: u64, count: usize, weighted: bool) -> Vec<ReplacementInstance> {
    let max_weight = weighted.then_some(10);
    let mut out = Vec::with_capacity(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let g = if rng.gen_bool(0.75) {
            let n = rng.gen_range(8..=40);
            let p = rng.gen_range(2.5..5.0) / n as f64;
            random_graph(&mut rng, n, p, max_weight).unwrap()
        } else {
            let rows = rng.gen_range(2..=5);
            let cols = rng.gen_range(3..=8);
            grid_graph(&mut rng, rows, cols, max_weight).unwrap()
        };
        let f = rng.gen_range(1..=8).min(g.edge_count());
        let model = if rng.gen_bool(0.7) { FaultModel::PathHitting } else { FaultModel::Uniform };
        if let Ok(inst) = sample_instance(&mut rng, g, f, model, None) {
            if inst.fault_count() >= 1 && inst.last_index() >= 1 {
                out.push(inst);
            }
        }
    }
    out
}

/// Small instances for exhaustive checks: `n <= 12`, `|F| <= 4`.
pub fn tiny_corpus(seed: u64, count: usize, weighted: bool) -> Vec<ReplacementInstance> {
    let max_weight = weighted.then_some(4);
    let mut out = Vec::with_capacity(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.25..0.6);
        let g = random_graph(&mut rng, n, p, max_weight).unwrap();
        let f = rng.gen_range(1..=4).min(g.edge_count());
        let model = if rng.gen_bool(0.6) { FaultModel::PathHitting } else { FaultModel::Uniform };
        if let Ok(inst) = sample_instance(&mut rng, g, f, model, None) {
            out.push(inst);
        }
    }
    out
}

/// Every generated lower-bound instance small enough for the exact oracle.
pub fn lower_bound_corpus() -> Vec<(String, ReplacementInstance)> {
    let mut out = Vec::new();
    for g in 3..=5 {
        out.push((format!("single g={g}"), gen_single(g).unwrap().instance));
        out.push((format!("odd g={g}"), gen_single_odd(g).unwrap().instance));
    }
    for (g, copies) in [(3, 2), (4, 2), (3, 3)] {
        out.push((format!("glued g={g} x{copies}"), gen_glued(g, copies).unwrap().instance));
    }
    out.push(("mixed g=3,4".into(), gen_glued_mixed(&[3, 4]).unwrap().instance));
    out
}

//! Seeded random graphs and fault sets.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{shortest_path, Edge, FaultSet, Graph, Vertex, Weight};
use crate::instance::ReplacementInstance;

/// Attempts at drawing faults and endpoints before giving up on a graph.
pub const MAX_ATTEMPTS: usize = 64;

fn lengths<R: Rng>(rng: &mut R, pairs: Vec<(Vertex, Vertex)>, n: usize, max_weight: Option<Weight>) -> Result<Graph> {
    match max_weight {
        None => Graph::unweighted(n, pairs),
        Some(0) => Err(Error::InvalidArgument("max_weight must be at least 1".into())),
        Some(m) => {
            let triples: Vec<_> = pairs.into_iter().map(|(a, b)| (a, b, rng.gen_range(1..=m))).collect();
            Graph::weighted(n, triples)
        }
    }
}

/// Erdős–Rényi graph: each of the `n(n-1)/2` pairs is an edge with
/// probability `p`. With `max_weight` set, lengths are uniform in `1..=max_weight`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, max_weight: Option<Weight>) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} is not in [0, 1]")));
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    lengths(rng, pairs, n, max_weight)
}

/// `rows x cols` grid; vertex `r * cols + c`.
pub fn grid_graph<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_weight: Option<Weight>) -> Result<Graph> {
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                pairs.push((v, v + 1));
            }
            if r + 1 < rows {
                pairs.push((v, v + cols));
            }
        }
    }
    lengths(rng, pairs, rows * cols, max_weight)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultModel {
    /// Distinct edges chosen uniformly.
    Uniform,
    /// Each fault is an edge of the current shortest `s`–`t` path, so the
    /// final path is forced around all of them.
    PathHitting,
}

fn connected_without(g: &Graph, faults: &FaultSet, s: Vertex, t: Vertex) -> bool {
    shortest_path(g, faults, s, t).is_ok()
}

fn draw_faults<R: Rng>(
    rng: &mut R,
    g: &Graph,
    count: usize,
    model: FaultModel,
    s: Vertex,
    t: Vertex,
) -> Option<FaultSet> {
    let mut faults = FaultSet::new();
    match model {
        FaultModel::Uniform => {
            let all: Vec<Edge> = g.edges().map(|(e, _)| e).collect();
            faults = all.choose_multiple(rng, count).copied().collect();
        }
        FaultModel::PathHitting => {
            while faults.len() < count {
                let path = shortest_path(g, &faults, s, t).ok()?;
                let mut on_path: Vec<Edge> = path.edges().map(|(a, b)| Edge::new(a, b).unwrap()).collect();
                on_path.shuffle(rng);
                let pick = on_path.into_iter().find(|e| {
                    let mut trial = faults.clone();
                    trial.insert(*e);
                    connected_without(g, &trial, s, t)
                })?;
                faults.insert(pick);
            }
        }
    }
    (faults.len() == count && connected_without(g, &faults, s, t)).then_some(faults)
}

/// Draws `fault_count` faults and, unless given, distinct endpoints, until
/// `s` and `t` stay connected without the faults. Gives up after
/// [`MAX_ATTEMPTS`] draws.
pub fn sample_instance<R: Rng>(
    rng: &mut R,
    g: Graph,
    fault_count: usize,
    model: FaultModel,
    endpoints: Option<(Vertex, Vertex)>,
) -> Result<ReplacementInstance> {
    let n = g.vertex_count();
    if n < 2 && endpoints.is_none() {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    if fault_count > g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "{fault_count} faults requested from {} edges",
            g.edge_count()
        )));
    }
    if let Some((s, t)) = endpoints {
        g.check_vertex(s)?;
        g.check_vertex(t)?;
    }
    for _ in 0..MAX_ATTEMPTS {
        let (s, t) = endpoints.unwrap_or_else(|| {
            let s = rng.gen_range(0..n);
            let t = (s + rng.gen_range(1..n)) % n;
            (s, t)
        });
        if !connected_without(&g, &FaultSet::new(), s, t) {
            if endpoints.is_some() {
                return Err(Error::Disconnected { s, t });
            }
            continue;
        }
        if let Some(faults) = draw_faults(rng, &g, fault_count, model, s, t) {
            return ReplacementInstance::from_endpoints(g, faults, s, t);
        }
    }
    Err(Error::InvalidInput(format!("no connected instance after {MAX_ATTEMPTS} attempts")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = grid_graph(&mut rng, 3, 4, None).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 3 * 3 + 2 * 4);
        let w = grid_graph(&mut rng, 2, 2, Some(10)).unwrap();
        assert!(w.edges().all(|(_, l)| (1..=10).contains(&l)));
    }

    #[test]
    fn same_seed_same_instance() {
        let make = || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let g = random_graph(&mut rng, 20, 0.2, None).unwrap();
            let inst = sample_instance(&mut rng, g, 4, FaultModel::PathHitting, None).unwrap();
            (inst.faults().clone(), inst.path().clone())
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn path_hitting_on_a_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = grid_graph(&mut rng, 4, 4, None).unwrap();
        let inst = sample_instance(&mut rng, g, 3, FaultModel::PathHitting, Some((0, 15))).unwrap();
        assert_eq!(inst.fault_count(), 3);
        assert_eq!((inst.s(), inst.t()), (0, 15));
    }

    #[test]
    fn impossible_requests_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = Graph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        assert!(sample_instance(&mut rng, g.clone(), 1, FaultModel::Uniform, Some((0, 2))).is_err());
        assert!(sample_instance(&mut rng, g.clone(), 5, FaultModel::Uniform, None).is_err());
        assert!(random_graph(&mut rng, 3, 1.5, None).is_err());
        let g = Graph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            sample_instance(&mut rng, g, 0, FaultModel::Uniform, Some((0, 3))),
            Err(Error::Disconnected { .. })
        ));
    }
}

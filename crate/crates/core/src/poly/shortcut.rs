use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distances_masked, Edge, EdgeMask, Vertex, Weight, INF};
use crate::instance::ReplacementInstance;

/// Which end of a subpath a shortcut is traversed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// From the subpath's first vertex.
    Left,
    /// From the subpath's last vertex.
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];
}

/// Distance tables for evaluating base-fault relations on one instance:
/// distances in `G` from every path vertex and every fault endpoint, and
/// distances in `G \ F` from every path vertex.
pub struct ShortcutIndex<'a> {
    inst: &'a ReplacementInstance,
    faults: Vec<Edge>,
    full: Vec<Option<Vec<Weight>>>,
    avoiding: Vec<Vec<Weight>>,
}

impl<'a> ShortcutIndex<'a> {
    pub fn new(inst: &'a ReplacementInstance) -> Self {
        let g = inst.graph();
        let open = EdgeMask::empty(g.edge_count());
        let faults = inst.faults().to_vec();
        let mut full = vec![None; g.vertex_count()];
        let sources = inst
            .path()
            .vertices()
            .iter()
            .copied()
            .chain(faults.iter().flat_map(|e| [e.u(), e.v()]));
        for v in sources {
            if full[v].is_none() {
                full[v] = Some(distances_masked(g, &open, v));
            }
        }
        let avoiding = inst
            .path()
            .vertices()
            .iter()
            .map(|&v| distances_masked(g, inst.fault_mask(), v))
            .collect();
        Self { inst, faults, full, avoiding }
    }

    pub fn instance(&self) -> &'a ReplacementInstance {
        self.inst
    }

    /// `F` in canonical order.
    pub fn faults(&self) -> &[Edge] {
        &self.faults
    }

    fn full_from(&self, v: Vertex) -> &[Weight] {
        self.full[v].as_deref().expect("row precomputed for path vertices and fault endpoints")
    }

    /// Length of the shortest walk from path index `from` to path index `to`
    /// that traverses `e_b` as its first edge of `F` and also traverses `e`.
    /// The leg before `e_b` lies in `G \ F`; the rest may use any edge of `G`.
    pub fn walk_length(&self, from: usize, to: usize, e_b: Edge, e: Edge) -> Option<Weight> {
        let g = self.inst.graph();
        let start = &self.avoiding[from];
        let end = self.full_from(self.inst.vertex_at(to));
        let w_b = g.weight(&e_b).expect("fault is a graph edge");
        let add = |parts: &[Weight]| -> Weight {
            parts.iter().try_fold(0u64, |acc, &d| (d != INF).then(|| acc + d)).unwrap_or(INF)
        };
        let best = if e_b == e {
            let (u, v) = e.endpoints();
            add(&[start[u], w_b, end[v]]).min(add(&[start[v], w_b, end[u]]))
        } else {
            let w_e = g.weight(&e).expect("fault is a graph edge");
            let mut best = INF;
            for (enter_b, exit_b) in [(e_b.u(), e_b.v()), (e_b.v(), e_b.u())] {
                let middle = self.full_from(exit_b);
                for (enter, exit) in [(e.u(), e.v()), (e.v(), e.u())] {
                    best = best.min(add(&[start[enter_b], w_b, middle[enter], w_e, end[exit]]));
                }
            }
            best
        };
        (best != INF).then_some(best)
    }

    /// Whether `e_b` is a base fault of generating fault `e` for the subpath
    /// between path indices `a <= b`, seen from `side`: some walk between the
    /// subpath's endpoints, strictly shorter than the subpath, contains `e`
    /// and meets `e_b` first among the faults.
    pub fn is_base_fault(&self, a: usize, b: usize, e_b: Edge, e: Edge, side: Side) -> bool {
        let (from, to) = match side {
            Side::Left => (a, b),
            Side::Right => (b, a),
        };
        self.walk_length(from, to, e_b, e)
            .is_some_and(|len| len < self.inst.subpath_length(a, b))
    }
}

/// Base-fault test for the subpath between path vertices `a` and `b`.
pub fn base_fault_reach(
    inst: &ReplacementInstance,
    a: Vertex,
    b: Vertex,
    e_b: Edge,
    e: Edge,
    side: Side,
) -> Result<bool> {
    let (i, j) = inst.subpath_positions(a, b)?;
    for x in [e_b, e] {
        if !inst.faults().contains(&x) {
            return Err(Error::InvalidArgument(format!("{x} is not a fault")));
        }
    }
    Ok(ShortcutIndex::new(inst).is_base_fault(i, j, e_b, e, side))
}

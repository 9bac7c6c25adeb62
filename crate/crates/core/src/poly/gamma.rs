use serde::Serialize;

use super::matching::{matching_with_witness, MatchingResult};
use super::shortcut::{ShortcutIndex, Side};
use crate::graph::{Edge, FaultSet};

/// Bipartite graph between the faults of a candidate set (left) and all of
/// `F` (right), joining each generating fault to its base faults on one side
/// of a subpath.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaGraph {
    pub side: Side,
    pub left: Vec<Edge>,
    pub right: Vec<Edge>,
    /// `adjacency[i]` lists indices into `right`.
    pub adjacency: Vec<Vec<usize>>,
}

impl GammaGraph {
    pub fn matching(&self) -> MatchingResult {
        matching_with_witness(&self.adjacency, self.right.len())
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

/// Builds the graph for the subpath between path indices `a <= b` and the
/// candidate set `left`.
pub fn build_gamma(index: &ShortcutIndex<'_>, a: usize, b: usize, left: &FaultSet, side: Side) -> GammaGraph {
    let right = index.faults().to_vec();
    let left = left.to_vec();
    let adjacency = left
        .iter()
        .map(|&e| {
            (0..right.len())
                .filter(|&j| index.is_base_fault(a, b, right[j], e, side))
                .collect()
        })
        .collect();
    GammaGraph { side, left, right, adjacency }
}

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Edge, FaultSet, Vertex};
use crate::instance::ReplacementInstance;

/// A partition of a replacement path into subpaths, each paired with the
/// fault set under which it is shortest.
///
/// Two shapes share this type:
///
/// * plain: subpath `i` runs from `boundaries[i]` to `boundaries[i + 1]`
///   and `separators` is empty;
/// * interleaved: for `i < q - 1` subpath `i` runs from `boundaries[i]` to
///   the vertex just before `boundaries[i + 1]`, and `separators[i]` is the
///   path edge entering `boundaries[i + 1]`. The last subpath runs to `t`.
///   Subpaths may be empty.
///
/// With `q == 1` both shapes coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub boundaries: Vec<Vertex>,
    pub fault_sets: Vec<FaultSet>,
    #[serde(default)]
    pub separators: Vec<Edge>,
    pub q: usize,
    pub budget: usize,
}

impl Decomposition {
    /// Plain decomposition from cut indices `0 = c_0 <= c_1 <= ... <= c_q = last`.
    pub(crate) fn plain(
        inst: &ReplacementInstance,
        cuts: &[usize],
        fault_sets: Vec<FaultSet>,
        budget: usize,
    ) -> Self {
        debug_assert_eq!(cuts.len(), fault_sets.len() + 1);
        Self {
            boundaries: cuts.iter().map(|&i| inst.vertex_at(i)).collect(),
            q: fault_sets.len(),
            fault_sets,
            separators: Vec::new(),
            budget,
        }
    }

    /// Interleaved decomposition from subpath index ranges `(start, end)`,
    /// where consecutive ranges are joined by exactly one path edge.
    pub(crate) fn interleaved(
        inst: &ReplacementInstance,
        ranges: &[(usize, usize)],
        fault_sets: Vec<FaultSet>,
        budget: usize,
    ) -> Self {
        debug_assert_eq!(ranges.len(), fault_sets.len());
        let mut boundaries: Vec<Vertex> = ranges.iter().map(|&(a, _)| inst.vertex_at(a)).collect();
        boundaries.push(inst.vertex_at(ranges.last().unwrap().1));
        let separators = ranges
            .windows(2)
            .map(|w| {
                debug_assert_eq!(w[0].1 + 1, w[1].0);
                inst.path_edge(w[0].1)
            })
            .collect();
        Self {
            boundaries,
            q: fault_sets.len(),
            fault_sets,
            separators,
            budget,
        }
    }

    pub fn is_interleaved(&self) -> bool {
        !self.separators.is_empty()
    }

    pub fn max_fault_set(&self) -> usize {
        self.fault_sets.iter().map(FaultSet::len).max().unwrap_or(0)
    }

    /// Subpath index ranges on `inst`'s path.
    pub fn subpath_ranges(&self, inst: &ReplacementInstance) -> Result<Vec<(usize, usize)>> {
        let pos = self
            .boundaries
            .iter()
            .map(|&v| inst.position_of(v))
            .collect::<Result<Vec<_>>>()?;
        let q = self.q;
        Ok((0..q)
            .map(|i| {
                if self.is_interleaved() && i + 1 < q {
                    (pos[i], pos[i + 1] - 1)
                } else {
                    (pos[i], pos[i + 1])
                }
            })
            .collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

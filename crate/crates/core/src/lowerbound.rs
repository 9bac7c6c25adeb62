//! Generators for instances that cannot be split into few low-budget subpaths.
//!
//! One copy with exponent `g` has vertices labelled `1..=N` with
//! `N = 2^(g+1) - 1`, the path `1, 2, ..., N`, and for `k = 0..=g-3` the
//! chords `(2^k, 2^(g+1) - 2^(k+2))` and `(2^(k+2), 2^(g+1) - 2^k)`. All
//! chords are faults. Glued instances chain copies end to start.

use crate::error::{Error, Result};
use crate::graph::{Edge, FaultSet, Graph, Path, Vertex};
use crate::instance::ReplacementInstance;
use crate::oracle::min_fault_set;

/// Keeps vertex counts (and the exhaustive oracles run on them) sane.
pub const MAX_EXPONENT: u32 = 20;

#[derive(Clone, Debug)]
pub struct LowerBoundInstance {
    pub instance: ReplacementInstance,
    /// Exponent of each copy, in path order.
    pub g_values: Vec<u32>,
    /// Two `(start, end)` arcs per copy, split at the copy's midpoint.
    pub half_arcs: Vec<(Vertex, Vertex)>,
    pub per_copy_faults: Vec<FaultSet>,
    offsets: Vec<usize>,
}

impl LowerBoundInstance {
    pub fn copies(&self) -> usize {
        self.g_values.len()
    }

    /// Graph vertex for `label` (1-based) in copy `copy` (0-based).
    pub fn vertex(&self, copy: usize, label: usize) -> Option<Vertex> {
        let g = *self.g_values.get(copy)?;
        (1..=copy_size(g)).contains(&label).then(|| self.offsets[copy] + label - 1)
    }

    /// `(copy, label)` for a graph vertex; shared vertices report the earlier copy.
    pub fn label_of(&self, v: Vertex) -> Option<(usize, usize)> {
        self.offsets
            .iter()
            .zip(&self.g_values)
            .enumerate()
            .find(|(_, (&o, &g))| v >= o && v < o + copy_size(g))
            .map(|(c, (&o, _))| (c, v - o + 1))
    }

    /// Largest per-copy fault count.
    pub fn per_copy_fault_count(&self) -> usize {
        self.per_copy_faults.iter().map(FaultSet::len).max().unwrap_or(0)
    }
}

fn copy_size(g: u32) -> usize {
    (1usize << (g + 1)) - 1
}

type LabelEdges = Vec<(usize, usize)>;

/// Chords of one copy in label space, first family then second.
fn chords(g: u32) -> (LabelEdges, LabelEdges) {
    let top = 1usize << (g + 1);
    let first = (0..=g - 3).map(|k| (1 << k, top - (1 << (k + 2)))).collect();
    let second = (0..=g - 3).map(|k| (1 << (k + 2), top - (1 << k))).collect();
    (first, second)
}

fn check_exponent(g: u32) -> Result<()> {
    if g <= 2 {
        return Err(Error::Degenerate(g));
    }
    if g > MAX_EXPONENT {
        return Err(Error::InvalidArgument(format!("g = {g} exceeds the limit {MAX_EXPONENT}")));
    }
    Ok(())
}

fn build(g_values: &[u32], drop_last_chord: bool) -> Result<LowerBoundInstance> {
    if g_values.is_empty() {
        return Err(Error::InvalidArgument("at least one copy is required".into()));
    }
    for &g in g_values {
        check_exponent(g)?;
    }
    let mut offsets = Vec::with_capacity(g_values.len());
    let mut next = 0;
    for &g in g_values {
        offsets.push(next);
        next += copy_size(g) - 1;
    }
    let n = next + 1;

    let mut edges = Vec::new();
    let mut per_copy_faults = Vec::new();
    let mut half_arcs = Vec::new();
    for (&g, &o) in g_values.iter().zip(&offsets) {
        let size = copy_size(g);
        let at = |label: usize| o + label - 1;
        edges.extend((1..size).map(|l| (at(l), at(l + 1))));
        let (first, mut second) = chords(g);
        if drop_last_chord {
            second.pop();
        }
        let faults: Vec<(usize, usize)> = first.into_iter().chain(second).map(|(a, b)| (at(a), at(b))).collect();
        edges.extend(faults.iter().copied());
        per_copy_faults.push(
            faults
                .iter()
                .map(|&(a, b)| Edge::new(a, b))
                .collect::<Result<FaultSet>>()?,
        );
        let mid = 1usize << g;
        half_arcs.push((at(1), at(mid)));
        half_arcs.push((at(mid), at(size)));
    }
    let graph = Graph::unweighted(n, edges)?;
    let faults: FaultSet = per_copy_faults.iter().flat_map(|f| f.iter().copied()).collect();
    let instance = ReplacementInstance::new(graph, faults, Path::new((0..n).collect()))?;
    Ok(LowerBoundInstance { instance, g_values: g_values.to_vec(), half_arcs, per_copy_faults, offsets })
}

/// One copy with exponent `g >= 3`; `|F| = 2(g - 2)`.
pub fn gen_single(g: u32) -> Result<LowerBoundInstance> {
    build(&[g], false)
}

/// One copy without the last chord of the second family; `|F| = 2(g - 2) - 1`.
pub fn gen_single_odd(g: u32) -> Result<LowerBoundInstance> {
    build(&[g], true)
}

/// `copies` copies of exponent `g`, each sharing its last vertex with the
/// next copy's first.
pub fn gen_glued(g: u32, copies: usize) -> Result<LowerBoundInstance> {
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    build(&vec![g; copies], false)
}

/// Glued chain whose copies may have different exponents.
pub fn gen_glued_mixed(g_values: &[u32]) -> Result<LowerBoundInstance> {
    build(g_values, false)
}

/// Minimum fault-set size for the subpath spanning half-arc `arc_index`.
pub fn half_arc_min_fault(lbi: &LowerBoundInstance, arc_index: usize) -> Result<usize> {
    let &(a, b) = lbi
        .half_arcs
        .get(arc_index)
        .ok_or_else(|| Error::InvalidArgument(format!("no half-arc {arc_index}")))?;
    Ok(min_fault_set(&lbi.instance, a, b)?.len())
}

use crate::error::{Error, Result};
use crate::graph::{
    distance_masked, masked_path_length, shortest_path_masked, Edge, EdgeMask, FaultSet, Graph,
    Path, Vertex, Weight,
};

/// A graph, a fault set `F`, and a simple path that is shortest once `F`
/// is removed.
///
/// Subpaths are addressed by index pairs `(a, b)` into the path's vertex
/// sequence with `a <= b`; `a == b` is the empty subpath at that vertex.
#[derive(Clone, Debug)]
pub struct ReplacementInstance {
    graph: Graph,
    faults: FaultSet,
    path: Path,
    fault_mask: EdgeMask,
    prefix: Vec<Weight>,
    position: Vec<Option<usize>>,
}

impl ReplacementInstance {
    /// Validates that `path` is simple, avoids `faults`, and is shortest in
    /// `graph` minus `faults`.
    pub fn new(graph: Graph, faults: FaultSet, path: Path) -> Result<Self> {
        let fault_mask = graph.mask(&faults)?;
        masked_path_length(&graph, &fault_mask, &path)?;
        if !path.is_simple() {
            return Err(Error::InvalidPath("replacement path repeats a vertex".into()));
        }
        let mut prefix = Vec::with_capacity(path.vertices().len());
        prefix.push(0);
        for (a, b) in path.edges() {
            let id = graph.edge_id_between(a, b).expect("validated above");
            prefix.push(prefix.last().unwrap() + graph.weight_of(id));
        }
        let (s, t) = (path.first().unwrap(), path.last().unwrap());
        if distance_masked(&graph, &fault_mask, s, t) != *prefix.last().unwrap() {
            return Err(Error::InvalidPath(format!(
                "path is not shortest between {s} and {t} once the faults are removed"
            )));
        }
        let mut position = vec![None; graph.vertex_count()];
        for (i, &v) in path.vertices().iter().enumerate() {
            position[v] = Some(i);
        }
        Ok(Self { graph, faults, path, fault_mask, prefix, position })
    }

    /// Builds the instance around the deterministic shortest `s`–`t` path of
    /// `graph` minus `faults`.
    pub fn from_endpoints(graph: Graph, faults: FaultSet, s: Vertex, t: Vertex) -> Result<Self> {
        graph.check_vertex(s)?;
        graph.check_vertex(t)?;
        let mask = graph.mask(&faults)?;
        let path = shortest_path_masked(&graph, &mask, s, t)?;
        Self::new(graph, faults, path)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn faults(&self) -> &FaultSet {
        &self.faults
    }

    pub fn fault_count(&self) -> usize {
        self.faults.len()
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn s(&self) -> Vertex {
        self.path.first().unwrap()
    }

    pub fn t(&self) -> Vertex {
        self.path.last().unwrap()
    }

    /// Index of the last path vertex (the hop count of the path).
    pub fn last_index(&self) -> usize {
        self.path.hops()
    }

    pub fn vertex_at(&self, i: usize) -> Vertex {
        self.path.vertices()[i]
    }

    pub fn position_of(&self, v: Vertex) -> Result<usize> {
        self.position.get(v).copied().flatten().ok_or(Error::NotOnPath(v))
    }

    pub fn fault_mask(&self) -> &EdgeMask {
        &self.fault_mask
    }

    /// Length of the subpath between path indices `a <= b`.
    pub fn subpath_length(&self, a: usize, b: usize) -> Weight {
        self.prefix[b] - self.prefix[a]
    }

    pub fn subpath(&self, a: usize, b: usize) -> Path {
        Path::new(self.path.vertices()[a..=b].to_vec())
    }

    /// The path edge between indices `i` and `i + 1`.
    pub fn path_edge(&self, i: usize) -> Edge {
        Edge::new(self.vertex_at(i), self.vertex_at(i + 1)).expect("simple path")
    }

    /// Whether the subpath `(a, b)` is shortest in the graph minus `mask`.
    /// The subpath itself must avoid `mask`, which holds for every subset of
    /// the instance's faults.
    pub fn subpath_shortest_under(&self, mask: &EdgeMask, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        distance_masked(&self.graph, mask, self.vertex_at(a), self.vertex_at(b))
            == self.subpath_length(a, b)
    }

    /// Positions of a pair of path vertices, checking `a` does not come after `b`.
    pub(crate) fn subpath_positions(&self, a: Vertex, b: Vertex) -> Result<(usize, usize)> {
        let (i, j) = (self.position_of(a)?, self.position_of(b)?);
        if i > j {
            return Err(Error::InvalidArgument(format!(
                "subpath endpoints out of order: {a} comes after {b} on the path"
            )));
        }
        Ok((i, j))
    }
}

//! Undirected graphs with positive integer lengths, edge masking and
//! deterministic shortest paths.
//!
//! Every distance in this crate is an exact integer. Unweighted graphs carry
//! unit lengths and take a BFS fast path; weighted graphs run Dijkstra.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Weight = u64;
pub type EdgeId = usize;

/// Sentinel used by the internal distance tables for "unreachable".
pub(crate) const INF: Weight = Weight::MAX;

/// An undirected edge stored as a canonical pair with the smaller endpoint
/// first, so equality and ordering do not depend on orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(Vertex, Vertex)", into = "(Vertex, Vertex)")]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(Self { u: a.min(b), v: a.max(b) })
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl TryFrom<(Vertex, Vertex)> for Edge {
    type Error = Error;

    fn try_from((a, b): (Vertex, Vertex)) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl From<Edge> for (Vertex, Vertex) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A set of failing edges, iterated in canonical edge order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaultSet(BTreeSet<Edge>);

impl FaultSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.0.remove(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &FaultSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Edges in canonical order.
    pub fn to_vec(&self) -> Vec<Edge> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<Edge> for FaultSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FaultSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// An ordered vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of edges.
    pub fn hops(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.0.len());
        self.0.iter().all(|v| seen.insert(*v))
    }

    /// Total length in `g`, or an error if consecutive vertices are not adjacent.
    pub fn length(&self, g: &Graph) -> Result<Weight> {
        self.edges().try_fold(0, |acc, (a, b)| {
            let id = g
                .edge_id_between(a, b)
                .ok_or_else(|| Error::InvalidPath(format!("{a} and {b} are not adjacent")))?;
            Ok(acc + g.weight_of(id))
        })
    }
}

impl From<Vec<Vertex>> for Path {
    fn from(v: Vec<Vertex>) -> Self {
        Self(v)
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Immutable after construction; all queries take `&self`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    weighted: bool,
    edges: Vec<(Edge, Weight)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<Edge, EdgeId>,
}

impl Graph {
    /// Unit-length graph from an edge list.
    pub fn unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::build(n, false, edges.into_iter().map(|(a, b)| (a, b, 1)))
    }

    /// Graph with explicit positive lengths.
    pub fn weighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Weight)>,
    {
        Self::build(n, true, edges)
    }

    pub(crate) fn build<I>(n: usize, weighted: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Weight)>,
    {
        let mut g = Graph {
            n,
            weighted,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            index: HashMap::new(),
        };
        for (a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            let e = Edge::new(a, b)?;
            if w == 0 {
                return Err(Error::NonPositiveWeight(e));
            }
            if !weighted && w != 1 {
                return Err(Error::InvalidInput(format!(
                    "edge {e} has length {w} in an unweighted graph"
                )));
            }
            if g.index.contains_key(&e) {
                return Err(Error::ParallelEdge(e));
            }
            let id = g.edges.len();
            g.edges.push((e, w));
            g.index.insert(e, id);
            g.adj[e.u].push((e.v, id));
            g.adj[e.v].push((e.u, id));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Edges with their lengths, in insertion order.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id].0
    }

    pub fn weight_of(&self, id: EdgeId) -> Weight {
        self.edges[id].1
    }

    pub fn edge_id(&self, e: &Edge) -> Option<EdgeId> {
        self.index.get(e).copied()
    }

    pub fn edge_id_between(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        Edge::new(a, b).ok().and_then(|e| self.edge_id(&e))
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.index.contains_key(e)
    }

    pub fn weight(&self, e: &Edge) -> Option<Weight> {
        self.edge_id(e).map(|id| self.weight_of(id))
    }

    /// Neighbours of `v` with the connecting edge id.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    /// Boolean mask over edge ids marking the members of `removed`.
    pub fn mask(&self, removed: &FaultSet) -> Result<EdgeMask> {
        let mut mask = EdgeMask::empty(self.edge_count());
        for e in removed {
            let id = self.edge_id(e).ok_or(Error::UnknownEdge(*e))?;
            mask.set(id, true);
        }
        Ok(mask)
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

/// Removed-edge mask indexed by [`EdgeId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMask(Vec<bool>);

impl EdgeMask {
    pub fn empty(m: usize) -> Self {
        Self(vec![false; m])
    }

    pub fn set(&mut self, id: EdgeId, removed: bool) {
        self.0[id] = removed;
    }

    pub fn is_removed(&self, id: EdgeId) -> bool {
        self.0[id]
    }
}

/// Single-source distances in `g` minus `mask`, [`INF`] for unreachable.
pub(crate) fn distances_masked(g: &Graph, mask: &EdgeMask, source: Vertex) -> Vec<Weight> {
    search(g, mask, source, None)
}

/// Distance from `s` to `t` in `g` minus `mask`, stopping as soon as `t` settles.
pub(crate) fn distance_masked(g: &Graph, mask: &EdgeMask, s: Vertex, t: Vertex) -> Weight {
    search(g, mask, s, Some(t))[t]
}

fn search(g: &Graph, mask: &EdgeMask, source: Vertex, target: Option<Vertex>) -> Vec<Weight> {
    let mut dist = vec![INF; g.n];
    dist[source] = 0;
    if !g.weighted {
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if Some(x) == target {
                break;
            }
            for &(y, id) in &g.adj[x] {
                if !mask.is_removed(id) && dist[y] == INF {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        return dist;
    }
    let mut heap = BinaryHeap::from([Reverse((0, source))]);
    while let Some(Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        if Some(x) == target {
            break;
        }
        for &(y, id) in &g.adj[x] {
            if mask.is_removed(id) {
                continue;
            }
            let nd = d + g.weight_of(id);
            if nd < dist[y] {
                dist[y] = nd;
                heap.push(Reverse((nd, y)));
            }
        }
    }
    dist
}

/// Exact single-source distances in `g` with `removed` deleted; `None` marks
/// unreachable vertices.
pub fn distances(g: &Graph, removed: &FaultSet, source: Vertex) -> Result<Vec<Option<Weight>>> {
    g.check_vertex(source)?;
    let mask = g.mask(removed)?;
    Ok(distances_masked(g, &mask, source)
        .into_iter()
        .map(|d| (d != INF).then_some(d))
        .collect())
}

/// A shortest `s`–`t` path in `g` minus `removed`.
///
/// Reconstructed backwards from `t`, always stepping to the smallest-id
/// predecessor on a shortest route, so the output depends only on the inputs.
pub fn shortest_path(g: &Graph, removed: &FaultSet, s: Vertex, t: Vertex) -> Result<Path> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let mask = g.mask(removed)?;
    shortest_path_masked(g, &mask, s, t)
}

pub(crate) fn shortest_path_masked(g: &Graph, mask: &EdgeMask, s: Vertex, t: Vertex) -> Result<Path> {
    let dist = distances_masked(g, mask, s);
    if dist[t] == INF {
        return Err(Error::Disconnected { s, t });
    }
    let mut rev = vec![t];
    let mut cur = t;
    while cur != s {
        let pred = g.adj[cur]
            .iter()
            .filter(|&&(y, id)| {
                !mask.is_removed(id) && dist[y] != INF && dist[y] + g.weight_of(id) == dist[cur]
            })
            .map(|&(y, _)| y)
            .min()
            .expect("settled vertex has a tight predecessor");
        rev.push(pred);
        cur = pred;
    }
    rev.reverse();
    Ok(Path(rev))
}

/// Checks that `p` is a path of `g` that uses no edge of `removed`, returning
/// its length.
pub(crate) fn masked_path_length(g: &Graph, mask: &EdgeMask, p: &Path) -> Result<Weight> {
    if p.vertices().is_empty() {
        return Err(Error::InvalidPath("empty vertex sequence".into()));
    }
    for &v in p.vertices() {
        g.check_vertex(v)?;
    }
    p.edges().try_fold(0, |acc, (a, b)| {
        let id = g
            .edge_id_between(a, b)
            .ok_or_else(|| Error::InvalidPath(format!("{a} and {b} are not adjacent")))?;
        if mask.is_removed(id) {
            return Err(Error::InvalidPath(format!("edge {} is removed", g.edge(id))));
        }
        Ok(acc + g.weight_of(id))
    })
}

/// Whether `p` is a shortest path between its endpoints in `g` minus `removed`.
pub fn is_shortest(g: &Graph, removed: &FaultSet, p: &Path) -> Result<bool> {
    let mask = g.mask(removed)?;
    let len = masked_path_length(g, &mask, p)?;
    let (s, t) = (p.first().unwrap(), p.last().unwrap());
    Ok(distance_masked(g, &mask, s, t) == len)
}

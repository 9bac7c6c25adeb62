//! Text and JSON formats.
//!
//! Graph files start with a header line `n m weighted` (`weighted` is 0 or
//! 1), followed by `m` lines `u v` or `u v w`. Fault files are bare edge
//! lines in the same format; a length, if given, must match the graph.
//! Blank lines and lines starting with `#` are ignored in both.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, FaultSet, Graph, Path, Vertex, Weight};
use crate::instance::ReplacementInstance;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::Parse { line, message: format!("{what} `{token}` is not a non-negative integer") })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    if header.len() != 3 {
        return Err(Error::Parse { line: hl, message: "header must be `n m weighted`".into() });
    }
    let n: usize = parse_num(hl, header[0], "vertex count")?;
    let m: usize = parse_num(hl, header[1], "edge count")?;
    let weighted = match header[2] {
        "0" => false,
        "1" => true,
        other => {
            return Err(Error::Parse { line: hl, message: format!("weighted flag `{other}` must be 0 or 1") })
        }
    };
    let arity = if weighted { 3 } else { 2 };
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    let mut last_line = hl;
    for (line, tokens) in lines {
        if tokens.len() != arity {
            return Err(Error::Parse { line, message: format!("expected {arity} fields, found {}", tokens.len()) });
        }
        let u = parse_num(line, tokens[0], "vertex")?;
        let v = parse_num(line, tokens[1], "vertex")?;
        let w = if weighted { parse_num(line, tokens[2], "length")? } else { 1 };
        edges.push((u, v, w));
        edge_lines.push(line);
        last_line = line;
    }
    if edges.len() != m {
        return Err(Error::Parse { line: last_line, message: format!("header promises {m} edges, found {}", edges.len()) });
    }
    Graph::build(n, weighted, edges.iter().copied()).map_err(|e| locate(e, &edges, &edge_lines))
}

// Attach the offending line to a graph construction error.
fn locate(err: Error, edges: &[(Vertex, Vertex, Weight)], lines: &[usize]) -> Error {
    let same = |e: &Edge, u: Vertex, v: Vertex| Edge::new(u, v).is_ok_and(|x| x == *e);
    let index = match &err {
        Error::VertexOutOfRange { vertex, .. } => edges.iter().position(|&(u, v, _)| u == *vertex || v == *vertex),
        Error::SelfLoop(x) => edges.iter().position(|&(u, v, _)| u == *x && v == *x),
        Error::NonPositiveWeight(e) => edges.iter().position(|&(u, v, w)| w == 0 && same(e, u, v)),
        Error::ParallelEdge(e) => edges.iter().enumerate().filter(|(_, &(u, v, _))| same(e, u, v)).nth(1).map(|(i, _)| i),
        _ => None,
    };
    match index {
        Some(i) => Error::Parse { line: lines[i], message: err.to_string() },
        None => err,
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {} {}\n", g.vertex_count(), g.edge_count(), u8::from(g.is_weighted()));
    for (e, w) in g.edges() {
        if g.is_weighted() {
            writeln!(out, "{} {} {w}", e.u(), e.v()).unwrap();
        } else {
            writeln!(out, "{} {}", e.u(), e.v()).unwrap();
        }
    }
    out
}

pub fn parse_faults(text: &str, g: &Graph) -> Result<FaultSet> {
    let mut set = FaultSet::new();
    for (line, tokens) in content_lines(text) {
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(Error::Parse { line, message: format!("expected `u v` or `u v w`, found {} fields", tokens.len()) });
        }
        let u = parse_num(line, tokens[0], "vertex")?;
        let v = parse_num(line, tokens[1], "vertex")?;
        let e = Edge::new(u, v).map_err(|err| Error::Parse { line, message: err.to_string() })?;
        let actual = g
            .weight(&e)
            .ok_or_else(|| Error::Parse { line, message: format!("fault {e} is not a graph edge") })?;
        if let Some(tok) = tokens.get(2) {
            let w: Weight = parse_num(line, tok, "length")?;
            if w != actual {
                return Err(Error::Parse { line, message: format!("fault {e} has length {actual}, not {w}") });
            }
        }
        if !set.insert(e) {
            return Err(Error::Parse { line, message: format!("fault {e} listed twice") });
        }
    }
    Ok(set)
}

pub fn write_faults(faults: &FaultSet, g: &Graph) -> String {
    let mut out = String::new();
    for e in faults.iter() {
        match g.weight(e) {
            Some(w) if g.is_weighted() => writeln!(out, "{} {} {w}", e.u(), e.v()).unwrap(),
            _ => writeln!(out, "{} {}", e.u(), e.v()).unwrap(),
        }
    }
    out
}

pub fn read_graph(path: impl AsRef<FsPath>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_faults(path: impl AsRef<FsPath>, g: &Graph) -> Result<FaultSet> {
    parse_faults(&std::fs::read_to_string(path)?, g)
}

/// Self-contained JSON form of a [`ReplacementInstance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub n: usize,
    pub weighted: bool,
    pub edges: Vec<(Vertex, Vertex, Weight)>,
    pub faults: FaultSet,
    pub path: Vec<Vertex>,
}

impl InstanceRecord {
    pub fn from_instance(inst: &ReplacementInstance) -> Self {
        let g = inst.graph();
        Self {
            n: g.vertex_count(),
            weighted: g.is_weighted(),
            edges: g.edges().map(|(e, w)| (e.u(), e.v(), w)).collect(),
            faults: inst.faults().clone(),
            path: inst.path().vertices().to_vec(),
        }
    }

    pub fn into_instance(self) -> Result<ReplacementInstance> {
        let g = Graph::build(self.n, self.weighted, self.edges)?;
        ReplacementInstance::new(g, self.faults, Path::new(self.path))
    }
}

pub fn instance_to_json(inst: &ReplacementInstance) -> Result<String> {
    Ok(serde_json::to_string(&InstanceRecord::from_instance(inst))?)
}

pub fn instance_from_json(s: &str) -> Result<ReplacementInstance> {
    serde_json::from_str::<InstanceRecord>(s)?.into_instance()
}

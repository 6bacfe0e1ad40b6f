//! Simple graphs with positive edge weights, and their weighted girth.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;
use std::ops::Add;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("second edge between `{0}` and `{1}`")]
    MultiEdge(String, String),
    #[error("edge `{0}`-`{1}` has non-positive or non-finite weight")]
    BadWeight(String, String),
    #[error("line {0}: {1}")]
    Malformed(usize, String),
}

/// Edge weights: ordered, addable, with a zero.
pub trait Weight: Clone + PartialOrd + Add<Output = Self> {
    fn zero() -> Self;

    fn is_valid(&self) -> bool {
        *self > Self::zero()
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }

    fn is_valid(&self) -> bool {
        self.is_finite() && *self > 0.0
    }
}

/// A simple graph with positive weights on its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<W = f64> {
    labels: Vec<String>,
    edges: Vec<(usize, usize, W)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    pairs: HashMap<(usize, usize), usize>,
}

impl<W: Weight> Default for WeightedGraph<W> {
    fn default() -> Self {
        Self { labels: Vec::new(), edges: Vec::new(), adjacency: Vec::new(), pairs: HashMap::new() }
    }
}

impl<W: Weight> WeightedGraph<W> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(labels: impl IntoIterator<Item = String>) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for label in labels {
            g.add_vertex(label)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: String) -> Result<usize, GraphError> {
        if self.labels.contains(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        self.labels.push(label);
        self.adjacency.push(Vec::new());
        Ok(self.labels.len() - 1)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: W) -> Result<usize, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(self.labels[u].clone()));
        }
        let key = (u.min(v), u.max(v));
        if self.pairs.contains_key(&key) {
            return Err(GraphError::MultiEdge(self.labels[u].clone(), self.labels[v].clone()));
        }
        if !weight.is_valid() {
            return Err(GraphError::BadWeight(self.labels[u].clone(), self.labels[v].clone()));
        }
        let id = self.edges.len();
        self.edges.push((key.0, key.1, weight));
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        self.pairs.insert(key, id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edges as `(u, v, weight)` with `u < v`, in insertion order.
    pub fn edges(&self) -> &[(usize, usize, W)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&W> {
        self.pairs.get(&(u.min(v), u.max(v))).map(|&e| &self.edges[e].2)
    }

    /// Total weight of the closed walk `vertices[0] - ... - vertices[n-1] - vertices[0]`,
    /// or `None` if a step is not an edge.
    pub fn closed_walk_length(&self, vertices: &[usize]) -> Option<W> {
        let mut total = W::zero();
        for i in 0..vertices.len() {
            let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            total = total + self.weight(a, b)?.clone();
        }
        Some(total)
    }

    /// Same graph with every weight mapped through `f`.
    pub fn map_weights<V: Weight>(&self, mut f: impl FnMut(&W) -> V) -> Result<WeightedGraph<V>, GraphError> {
        let mut g = WeightedGraph::with_vertices(self.labels.iter().cloned())?;
        for (u, v, w) in &self.edges {
            g.add_edge(*u, *v, f(w))?;
        }
        Ok(g)
    }
}

impl WeightedGraph<f64> {
    /// Text form: `node <label>` lines, then `arc <a> <b> <weight>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            let _ = writeln!(out, "node {label}");
        }
        for (u, v, w) in &self.edges {
            let _ = writeln!(out, "arc {} {} {}", self.labels[*u], self.labels[*v], w);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for (i, line) in text.lines().enumerate() {
            let tokens: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["node", label] => {
                    g.add_vertex(label.to_string())?;
                }
                ["arc", a, b, w] => {
                    let u = g.find(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
                    let v = g.find(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
                    let w: f64 = w.parse().map_err(|_| GraphError::Malformed(i + 1, format!("bad weight `{w}`")))?;
                    g.add_edge(u, v, w)?;
                }
                _ => return Err(GraphError::Malformed(i + 1, format!("cannot read `{}`", line.trim()))),
            }
        }
        Ok(g)
    }
}

/// A simple cycle given by its vertex sequence; the closing edge is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle<W = f64> {
    pub vertices: Vec<usize>,
    pub length: W,
}

struct Frontier<W> {
    dist: W,
    vertex: usize,
}

impl<W: PartialOrd> PartialEq for Frontier<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: PartialOrd> Eq for Frontier<W> {}

impl<W: PartialOrd> PartialOrd for Frontier<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: PartialOrd> Ord for Frontier<W> {
    // Reversed for a min-heap; ties go to the smaller vertex index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Minimum-weight simple cycle, or `None` for a forest.
///
/// For every edge `u v` the shortest `u`-`v` path avoiding that edge closes a
/// simple cycle through it; the lightest over all edges is the girth. Exact for
/// positive weights. Searches stop once they cannot beat the current best, and
/// ties keep the first edge in insertion order.
pub fn girth<W: Weight>(g: &WeightedGraph<W>) -> Option<Cycle<W>> {
    let n = g.vertex_count();
    let mut best: Option<Cycle<W>> = None;
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut pred: Vec<usize> = vec![usize::MAX; n];
    let mut done = vec![false; n];
    for (skip, (u, v, w)) in g.edges().iter().enumerate() {
        dist.iter_mut().for_each(|d| *d = None);
        done.iter_mut().for_each(|d| *d = false);
        let mut heap = BinaryHeap::new();
        dist[*u] = Some(W::zero());
        heap.push(Frontier { dist: W::zero(), vertex: *u });
        while let Some(Frontier { dist: d, vertex: x }) = heap.pop() {
            if done[x] {
                continue;
            }
            if let Some(b) = &best {
                if !(d.clone() + w.clone() < b.length) {
                    break;
                }
            }
            done[x] = true;
            if x == *v {
                let mut path = vec![*v];
                let mut cur = *v;
                while cur != *u {
                    cur = pred[cur];
                    path.push(cur);
                }
                path.reverse();
                best = Some(Cycle { vertices: path, length: d + w.clone() });
                break;
            }
            for &(y, e) in g.neighbours(x) {
                if e == skip || done[y] {
                    continue;
                }
                let nd = d.clone() + g.edges()[e].2.clone();
                if dist[y].as_ref().is_none_or(|cur| nd < *cur) {
                    dist[y] = Some(nd.clone());
                    pred[y] = x;
                    heap.push(Frontier { dist: nd, vertex: y });
                }
            }
        }
    }
    best.map(Cycle::canonical)
}

impl<W> Cycle<W> {
    /// Rotated to start at its smallest vertex, then heading to the smaller neighbour.
    pub fn canonical(mut self) -> Self {
        if let Some(start) = self.vertices.iter().enumerate().min_by_key(|p| p.1).map(|p| p.0) {
            self.vertices.rotate_left(start);
            if self.vertices.len() > 2 && self.vertices[1] > self.vertices[self.vertices.len() - 1] {
                self.vertices[1..].reverse();
            }
        }
        self
    }
}

use std::collections::BTreeSet;

use super::ComplexError;

/// A finite simple graph on named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: BTreeSet<[usize; 2]>,
}

impl Graph {
    /// Vertices are kept in the given order; duplicates are dropped.
    pub fn new(vertices: impl IntoIterator<Item = String>) -> Self {
        let mut seen = BTreeSet::new();
        let vertices = vertices.into_iter().filter(|v| seen.insert(v.clone())).collect();
        Self { vertices, edges: BTreeSet::new() }
    }

    /// The path `names[0] - names[1] - ...`.
    pub fn path(names: &[&str]) -> Self {
        let mut g = Self::new(names.iter().map(|s| s.to_string()));
        for w in names.windows(2) {
            g.add_edge(w[0], w[1]).expect("path vertices exist");
        }
        g
    }

    /// The cycle on `names`, in order.
    pub fn cycle(names: &[&str]) -> Self {
        let mut g = Self::path(names);
        if names.len() > 2 {
            g.add_edge(names[names.len() - 1], names[0]).expect("cycle vertices exist");
        }
        g
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), ComplexError> {
        let i = self.position(a).ok_or_else(|| ComplexError::UnknownVertex(a.to_string()))?;
        let j = self.position(b).ok_or_else(|| ComplexError::UnknownVertex(b.to_string()))?;
        if i == j {
            return Err(ComplexError::DegenerateSimplex { line: None, simplex: format!("{a} {b}") });
        }
        self.edges.insert([i.min(j), i.max(j)]);
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_names(&self) -> impl Iterator<Item = [&str; 2]> + '_ {
        self.edges.iter().map(|&[a, b]| [self.vertices[a].as_str(), self.vertices[b].as_str()])
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&[a.min(b), a.max(b)])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn find_triangle(&self) -> Option<[&str; 3]> {
        for &[a, b] in &self.edges {
            for c in (b + 1)..self.vertices.len() {
                if self.has_edge(a, c) && self.has_edge(b, c) {
                    return Some([&self.vertices[a], &self.vertices[b], &self.vertices[c]]);
                }
            }
        }
        None
    }

    /// True when the graph has no cycles.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &[a, b] in &self.edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

//! Finite simplicial complexes of dimension at most two.
//!
//! Vertices are opaque names. Internally every vertex gets the index of its
//! name in lexicographic order, so a simplex stored as a sorted index tuple is
//! also sorted by name and every iteration order in the crate is reproducible.

mod delta;
mod fixtures;
mod graph;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

pub use delta::DeltaComplex;
pub use fixtures::{fixture, k0_label, Fixture, FixtureComplex, FIXTURE_NAMES, K0_LABELS};
pub use graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("{}duplicate simplex {simplex}", line_prefix(*.line))]
    DuplicateSimplex { line: Option<usize>, simplex: String },
    #[error("{}simplex {simplex} references undeclared vertex `{vertex}`", line_prefix(*.line))]
    MissingVertex { line: Option<usize>, simplex: String, vertex: String },
    #[error("{}degenerate simplex {simplex} repeats a vertex", line_prefix(*.line))]
    DegenerateSimplex { line: Option<usize>, simplex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph contains the triangle {0}; its suspension is not 2-dimensional")]
    NotTriangleFree(String),
    #[error("apex name `{0}` clashes with a vertex of the suspended graph")]
    ApexClash(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid delta complex: {0}")]
    InvalidDelta(String),
    #[error("delta complex is not simplicial: {0}")]
    NotSimplicial(String),
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

/// An edge of a complex traversed in a chosen direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub source: usize,
    pub target: usize,
}

impl OrientedEdge {
    pub fn new(source: usize, target: usize) -> Self {
        Self { source, target }
    }

    pub fn reversed(self) -> Self {
        Self { source: self.target, target: self.source }
    }
}

/// A finite simplicial complex of dimension at most 2.
///
/// Construction enforces closure under faces: every pair of vertices of a
/// triangle is an edge. Whether the complex is *flag* is a property checked by
/// [`Complex::check_flag`], not a construction invariant, so non-flag
/// triangulations (the minimal projective plane, say) remain representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    edge_index: HashMap<[usize; 2], usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum FlagViolation {
    /// Three pairwise adjacent vertices that do not span a triangle.
    EmptyTriangle([String; 3]),
    /// Four pairwise adjacent vertices; the flag completion would be 3-dimensional.
    FourClique([String; 4]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub is_flag: bool,
    pub violations: Vec<FlagViolation>,
    /// Edges contained in exactly one triangle.
    pub free_edges: Vec<[String; 2]>,
    pub connected: bool,
}

/// Builder used by the parser and by programmatic construction alike.
#[derive(Debug, Default)]
struct RawSimplices {
    vertices: Vec<(String, Option<usize>)>,
    edges: Vec<([String; 2], Option<usize>)>,
    triangles: Vec<([String; 3], Option<usize>)>,
}

impl Complex {
    /// Builds a complex from vertex names, extra 1-cells and triangles.
    ///
    /// Every simplex must reference declared vertices. Faces of triangles are
    /// added automatically; listing such a face in `edges` as well is allowed.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[[S; 2]],
        triangles: &[[S; 3]],
    ) -> Result<Self, ComplexError> {
        let raw = RawSimplices {
            vertices: vertices.iter().map(|v| (v.as_ref().to_string(), None)).collect(),
            edges: edges
                .iter()
                .map(|[a, b]| ([a.as_ref().to_string(), b.as_ref().to_string()], None))
                .collect(),
            triangles: triangles
                .iter()
                .map(|[a, b, c]| {
                    ([a.as_ref().to_string(), b.as_ref().to_string(), c.as_ref().to_string()], None)
                })
                .collect(),
        };
        Self::from_raw(raw)
    }

    /// Builds a complex from triangles alone, declaring their vertices implicitly.
    pub fn from_triangles<S: AsRef<str>>(triangles: &[[S; 3]]) -> Result<Self, ComplexError> {
        let vertices: BTreeSet<&str> =
            triangles.iter().flat_map(|t| t.iter().map(|s| s.as_ref())).collect();
        let vertices: Vec<&str> = vertices.into_iter().collect();
        let triangles: Vec<[&str; 3]> =
            triangles.iter().map(|[a, b, c]| [a.as_ref(), b.as_ref(), c.as_ref()]).collect();
        Self::new::<&str>(&vertices, &[], &triangles)
    }

    fn from_raw(raw: RawSimplices) -> Result<Self, ComplexError> {
        let mut seen = BTreeSet::new();
        for (name, line) in &raw.vertices {
            if !seen.insert(name.clone()) {
                return Err(ComplexError::DuplicateSimplex { line: *line, simplex: format!("vertex {name}") });
            }
        }
        let names: Vec<String> = seen.into_iter().collect();
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();

        let lookup = |simplex: &[String], line: Option<usize>| -> Result<Vec<usize>, ComplexError> {
            let label = simplex.join(" ");
            let ids = simplex
                .iter()
                .map(|v| {
                    index.get(v).copied().ok_or_else(|| ComplexError::MissingVertex {
                        line,
                        simplex: label.clone(),
                        vertex: v.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let distinct: BTreeSet<usize> = ids.iter().copied().collect();
            if distinct.len() != ids.len() {
                return Err(ComplexError::DegenerateSimplex { line, simplex: label });
            }
            Ok(distinct.into_iter().collect())
        };

        let mut triangle_set = BTreeSet::new();
        for (tri, line) in &raw.triangles {
            let ids = lookup(tri, *line)?;
            if !triangle_set.insert([ids[0], ids[1], ids[2]]) {
                return Err(ComplexError::DuplicateSimplex { line: *line, simplex: format!("triangle {}", tri.join(" ")) });
            }
        }
        let mut explicit = BTreeSet::new();
        let mut edge_set = BTreeSet::new();
        for (edge, line) in &raw.edges {
            let ids = lookup(edge, *line)?;
            let e = [ids[0], ids[1]];
            if !explicit.insert(e) {
                return Err(ComplexError::DuplicateSimplex { line: *line, simplex: format!("edge {}", edge.join(" ")) });
            }
            edge_set.insert(e);
        }
        for &[a, b, c] in &triangle_set {
            edge_set.insert([a, b]);
            edge_set.insert([a, c]);
            edge_set.insert([b, c]);
        }
        let edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
        let edge_index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Ok(Self { names, index, edges, triangles: triangle_set.into_iter().collect(), edge_index })
    }

    /// Parses the line-based complex format.
    ///
    /// ```text
    /// # comment
    /// vertex a
    /// vertex b
    /// vertex c
    /// triangle a b c
    /// edge a d        # only needed for 1-cells outside every triangle
    /// ```
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let mut raw = RawSimplices::default();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let content = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, args)) = tokens.split_first() else { continue };
            let arity = match keyword {
                "vertex" => 1,
                "edge" => 2,
                "triangle" => 3,
                other => {
                    return Err(ComplexError::Malformed { line: lineno, message: format!("unknown keyword `{other}`") })
                }
            };
            if args.len() != arity {
                return Err(ComplexError::Malformed {
                    line: lineno,
                    message: format!("`{keyword}` takes {arity} name(s), found {}", args.len()),
                });
            }
            let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
            match arity {
                1 => raw.vertices.push((owned[0].clone(), Some(lineno))),
                2 => raw.edges.push(([owned[0].clone(), owned[1].clone()], Some(lineno))),
                _ => raw.triangles.push(([owned[0].clone(), owned[1].clone(), owned[2].clone()], Some(lineno))),
            }
        }
        Self::from_raw(raw)
    }

    /// Serializes to the text format; `parse(to_text())` reproduces the complex.
    ///
    /// Only edges outside every triangle are written explicitly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            let _ = writeln!(out, "vertex {name}");
        }
        let covered: BTreeSet<[usize; 2]> =
            self.triangles.iter().flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]]).collect();
        for e in &self.edges {
            if !covered.contains(e) {
                let _ = writeln!(out, "edge {} {}", self.names[e[0]], self.names[e[1]]);
            }
        }
        for &[a, b, c] in &self.triangles {
            let _ = writeln!(out, "triangle {} {} {}", self.names[a], self.names[b], self.names[c]);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize, ComplexError> {
        self.index.get(name).copied().ok_or_else(|| ComplexError::UnknownVertex(name.to_string()))
    }

    /// Edges as sorted index pairs, in lexicographic order.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Index of the edge `{a, b}` in [`Complex::edges`], in either order.
    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&[a.min(b), a.max(b)]).copied()
    }

    pub fn edge_names(&self, e: usize) -> [&str; 2] {
        let [a, b] = self.edges[e];
        [&self.names[a], &self.names[b]]
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_id(a, b).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.names.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Both orientations of every edge, sorted.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge> {
        let mut out: Vec<OrientedEdge> = self
            .edges
            .iter()
            .flat_map(|&[a, b]| [OrientedEdge::new(a, b), OrientedEdge::new(b, a)])
            .collect();
        out.sort();
        out
    }

    pub fn oriented_edge_label(&self, e: OrientedEdge) -> String {
        format!("{}->{}", self.names[e.source], self.names[e.target])
    }

    /// Sorted neighbour lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Number of triangles containing each edge, indexed like [`Complex::edges`].
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edges.len()];
        for &[a, b, c] in &self.triangles {
            for (x, y) in [(a, b), (a, c), (b, c)] {
                deg[self.edge_index[&[x, y]]] += 1;
            }
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Flag test by clique enumeration on the 1-skeleton, plus free edges and connectivity.
    pub fn check_flag(&self) -> FlagReport {
        let adj = self.adjacency();
        let tri_set: BTreeSet<[usize; 3]> = self.triangles.iter().copied().collect();
        let mut violations = Vec::new();
        let name = |v: usize| self.names[v].clone();
        for &[a, b] in &self.edges {
            for &c in adj[b].iter().filter(|&&c| c > b) {
                if !self.is_edge(a, c) {
                    continue;
                }
                if !tri_set.contains(&[a, b, c]) {
                    violations.push(FlagViolation::EmptyTriangle([name(a), name(b), name(c)]));
                }
                for &d in adj[c].iter().filter(|&&d| d > c) {
                    if self.is_edge(a, d) && self.is_edge(b, d) {
                        violations.push(FlagViolation::FourClique([name(a), name(b), name(c), name(d)]));
                    }
                }
            }
        }
        let free_edges = self
            .edge_degrees()
            .iter()
            .zip(&self.edges)
            .filter(|(&d, _)| d == 1)
            .map(|(_, &[a, b])| [name(a), name(b)])
            .collect();
        FlagReport { is_flag: violations.is_empty(), violations, free_edges, connected: self.is_connected() }
    }

    /// Combinatorial link of `v`: its neighbours, joined whenever they span a triangle with `v`.
    pub fn link_graph(&self, v: &str) -> Result<Graph, ComplexError> {
        let v = self.vertex_id(v)?;
        let link = self.link_triangles(v);
        let neighbours: Vec<usize> = self.adjacency()[v].clone();
        let mut graph = Graph::new(neighbours.iter().map(|&w| self.names[w].clone()));
        for (_, a, b) in link {
            graph.add_edge(&self.names[a], &self.names[b]).expect("link vertices are neighbours");
        }
        Ok(graph)
    }

    /// Triangles containing `v`, as `(triangle index, other corner, other corner)`.
    pub(crate) fn link_triangles(&self, v: usize) -> Vec<(usize, usize, usize)> {
        self.triangles
            .iter()
            .enumerate()
            .filter(|&(_t, tri)| tri.contains(&v)).map(|(t, tri)| {
                    let mut others = tri.iter().copied().filter(|&w| w != v);
                    (t, others.next().unwrap(), others.next().unwrap())
                })
            .collect()
    }

    /// The 1-skeleton as a [`Graph`].
    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::new(self.names.iter().cloned());
        for &[a, b] in &self.edges {
            g.add_edge(&self.names[a], &self.names[b]).expect("edge endpoints are vertices");
        }
        g
    }

    /// Subcomplex spanned by the given vertex names.
    pub fn full_subcomplex(&self, vertices: &[&str]) -> Result<Complex, ComplexError> {
        let ids: BTreeSet<usize> = vertices.iter().map(|v| self.vertex_id(v)).collect::<Result<_, _>>()?;
        let names: Vec<&str> = ids.iter().map(|&v| self.names[v].as_str()).collect();
        let edges: Vec<[&str; 2]> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| ids.contains(v)))
            .map(|&[a, b]| [self.name(a), self.name(b)])
            .collect();
        let tris: Vec<[&str; 3]> = self
            .triangles
            .iter()
            .filter(|t| t.iter().all(|v| ids.contains(v)))
            .map(|&[a, b, c]| [self.name(a), self.name(b), self.name(c)])
            .collect();
        Complex::new(&names, &edges, &tris)
    }
}

/// Suspension of a triangle-free graph with apexes `p` and `q`.
pub fn suspension(graph: &Graph) -> Result<Complex, ComplexError> {
    suspension_with_apexes(graph, "p", "q")
}

pub fn suspension_with_apexes(graph: &Graph, top: &str, bottom: &str) -> Result<Complex, ComplexError> {
    if let Some([a, b, c]) = graph.find_triangle() {
        return Err(ComplexError::NotTriangleFree(format!("{a} {b} {c}")));
    }
    for apex in [top, bottom] {
        if graph.vertices().iter().any(|v| v == apex) {
            return Err(ComplexError::ApexClash(apex.to_string()));
        }
    }
    let mut vertices: Vec<&str> = graph.vertices().iter().map(String::as_str).collect();
    vertices.push(top);
    vertices.push(bottom);
    let edges: Vec<[&str; 2]> = graph
        .vertices()
        .iter()
        .flat_map(|v| [[top, v.as_str()], [bottom, v.as_str()]])
        .collect();
    let triangles: Vec<[&str; 3]> = graph
        .edge_names()
        .flat_map(|[a, b]| [[top, a, b], [bottom, a, b]])
        .collect();
    Complex::new(&vertices, &edges, &triangles)
}

/// Counts of simplices by dimension, handy for reports.
pub fn f_vector(k: &Complex) -> [usize; 3] {
    [k.vertex_count(), k.edges().len(), k.triangles().len()]
}

/// Maps each vertex name to its index; exposed for serializers that need stable ids.
pub fn name_index(k: &Complex) -> BTreeMap<&str, usize> {
    k.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(report: &FlagReport) -> Vec<String> {
        report.free_edges.iter().map(|[a, b]| format!("{a}{b}")).collect()
    }

    #[test]
    fn parse_closes_faces() {
        let k = Complex::parse("vertex a\nvertex b\nvertex c\ntriangle a b c\n").unwrap();
        assert_eq!(f_vector(&k), [3, 3, 1]);
    }

    #[test]
    fn parse_rejects_degenerate_triangle() {
        let err = Complex::parse("vertex a\nvertex b\ntriangle a b a\n").unwrap_err();
        assert!(matches!(err, ComplexError::DegenerateSimplex { line: Some(3), .. }), "{err}");
    }

    #[test]
    fn parse_reports_defect_lines() {
        let err = Complex::parse("vertex a\nvertex b\n\ntriangle a b c\n").unwrap_err();
        assert!(matches!(err, ComplexError::MissingVertex { line: Some(4), ref vertex, .. } if vertex == "c"));
        let err = Complex::parse("vertex a\nvertex a\n").unwrap_err();
        assert!(matches!(err, ComplexError::DuplicateSimplex { line: Some(2), .. }));
        let err = Complex::parse("vertex a b\n").unwrap_err();
        assert!(matches!(err, ComplexError::Malformed { line: 1, .. }));
        let err = Complex::parse("# ok\nsquare a b c d\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: unknown keyword `square`");
        let err = Complex::parse("vertex a\nvertex b\nvertex c\ntriangle a b c\ntriangle c a b\n").unwrap_err();
        assert!(matches!(err, ComplexError::DuplicateSimplex { line: Some(5), .. }));
    }

    #[test]
    fn explicit_edges_survive_round_trip() {
        let text = "vertex a\nvertex b\nvertex c\nvertex d\nedge c d\ntriangle a b c\n";
        let k = Complex::parse(text).unwrap();
        assert_eq!(f_vector(&k), [4, 4, 1]);
        assert_eq!(Complex::parse(&k.to_text()).unwrap(), k);
    }

    #[test]
    fn single_simplex_is_flag_with_three_free_edges() {
        let k = Complex::from_triangles(&[["a", "b", "c"]]).unwrap();
        let report = k.check_flag();
        assert!(report.is_flag && report.connected);
        assert_eq!(names(&report), ["ab", "ac", "bc"]);
    }

    #[test]
    fn tetrahedron_boundary_is_not_flag() {
        let k = Complex::from_triangles(&[["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]])
            .unwrap();
        let report = k.check_flag();
        assert!(!report.is_flag);
        assert!(report.violations.iter().any(|v| matches!(v, FlagViolation::FourClique(_))));
        assert!(report.free_edges.is_empty());
    }

    #[test]
    fn hollow_triangle_is_not_flag() {
        let k = Complex::new(&["a", "b", "c"], &[["a", "b"], ["b", "c"], ["a", "c"]], &[]).unwrap();
        let report = k.check_flag();
        assert_eq!(report.violations, vec![FlagViolation::EmptyTriangle(["a".into(), "b".into(), "c".into()])]);
    }

    #[test]
    fn oriented_edges_double_the_edges() {
        let k = Complex::from_triangles(&[["a", "b", "c"], ["b", "c", "d"]]).unwrap();
        let oriented = k.oriented_edges();
        assert_eq!(oriented.len(), 2 * k.edges().len());
        assert!(oriented.iter().all(|e| e.reversed().reversed() == *e && oriented.contains(&e.reversed())));
    }

    #[test]
    fn links_of_small_complexes() {
        let k = Complex::from_triangles(&[["u", "v", "w"]]).unwrap();
        let link = k.link_graph("u").unwrap();
        assert_eq!(link.edge_names().collect::<Vec<_>>(), vec![["v", "w"]]);

        let k = Complex::from_triangles(&[["u", "v", "w"], ["u", "v", "z"]]).unwrap();
        let link = k.link_graph("u").unwrap();
        assert_eq!(link.vertices(), ["v", "w", "z"]);
        assert_eq!(link.edge_names().collect::<Vec<_>>(), vec![["v", "w"], ["v", "z"]]);
        assert!(matches!(k.link_graph("nope"), Err(ComplexError::UnknownVertex(_))));
    }

    #[test]
    fn suspension_of_an_edge() {
        let mut g = Graph::new(["a", "b"].map(String::from));
        g.add_edge("a", "b").unwrap();
        let k = suspension(&g).unwrap();
        assert_eq!(f_vector(&k), [4, 5, 2]);
        assert!(k.check_flag().is_flag);
    }

    #[test]
    fn suspension_rejects_triangles_and_clashes() {
        let mut g = Graph::new(["a", "b", "c"].map(String::from));
        g.add_edge("a", "b").unwrap();
        g.add_edge("b", "c").unwrap();
        g.add_edge("a", "c").unwrap();
        assert!(matches!(suspension(&g), Err(ComplexError::NotTriangleFree(_))));
        let g = Graph::new(["p".to_string()]);
        assert!(matches!(suspension(&g), Err(ComplexError::ApexClash(_))));
    }

    #[test]
    fn full_subcomplex_keeps_spanned_simplices() {
        let k = Complex::from_triangles(&[["a", "b", "c"], ["b", "c", "d"]]).unwrap();
        let sub = k.full_subcomplex(&["b", "c", "d"]).unwrap();
        assert_eq!(f_vector(&sub), [3, 3, 1]);
    }
}

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::Serialize;

use super::{corner_angles, MetricError, PeMetric};
use crate::complex::{Complex, OrientedEdge};
use crate::weighted::{girth, Cycle, WeightedGraph};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Outcome of comparing the girth of a graph with `2π`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub passes: bool,
    /// `|slack| <= tol`: the non-strict condition holds only up to rounding.
    pub boundary: bool,
    /// No cycle at all, so the condition holds trivially.
    pub vacuous: bool,
    pub witness: Option<Witness>,
    /// Girth minus `2π`; absent when vacuous.
    pub slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub cycle: Vec<String>,
    pub length: f64,
}

pub fn verdict_from_girth(graph: &WeightedGraph, cycle: Option<Cycle>, tol: f64) -> Verdict {
    match cycle {
        None => Verdict { passes: true, boundary: false, vacuous: true, witness: None, slack: None },
        Some(c) => {
            let slack = c.length - TAU;
            Verdict {
                passes: slack >= -tol,
                boundary: slack.abs() <= tol,
                vacuous: false,
                witness: Some(Witness {
                    cycle: c.vertices.iter().map(|&v| graph.label(v).to_string()).collect(),
                    length: c.length,
                }),
                slack: Some(slack),
            }
        }
    }
}

/// Link of `v` with each edge weighted by the angle at `v` of its triangle.
pub fn build_link(k: &Complex, m: &PeMetric, v: &str) -> Result<WeightedGraph, MetricError> {
    let angles = corner_angles(k, m)?;
    let vid = k.vertex_id(v)?;
    link_with_angles(k, &angles.angles, vid)
}

pub(crate) fn link_with_angles(k: &Complex, angles: &[[f64; 3]], v: usize) -> Result<WeightedGraph, MetricError> {
    let neighbours = &k.adjacency()[v];
    let mut g = WeightedGraph::with_vertices(neighbours.iter().map(|&w| k.name(w).to_string()))?;
    let slot = |w: usize| neighbours.binary_search(&w).expect("triangle corners are neighbours");
    for (t, a, b) in k.link_triangles(v) {
        let corner = k.triangles()[t].iter().position(|&w| w == v).unwrap();
        g.add_edge(slot(a), slot(b), angles[t][corner])?;
    }
    Ok(g)
}

/// The angle graph: one vertex per oriented edge; within each triangle, two
/// oriented edges with a common source or a common target are joined by an
/// edge weighted by the angle at the shared vertex.
///
/// Each triangle contributes a hexagon of total weight `2π`. Vertices are the
/// sorted oriented edges, labelled `a->b`.
pub fn angle_graph(k: &Complex, m: &PeMetric) -> Result<WeightedGraph, MetricError> {
    let angles = corner_angles(k, m)?;
    angle_graph_with(k, &angles.angles)
}

pub(crate) fn angle_graph_with<W: crate::weighted::Weight>(
    k: &Complex,
    angles: &[[W; 3]],
) -> Result<WeightedGraph<W>, MetricError> {
    let oriented = k.oriented_edges();
    let mut g = WeightedGraph::with_vertices(oriented.iter().map(|&e| k.oriented_edge_label(e)))?;
    let id = |s: usize, t: usize| oriented.binary_search(&OrientedEdge::new(s, t)).expect("oriented edge exists");
    for (t, tri) in k.triangles().iter().enumerate() {
        for (i, &w) in tri.iter().enumerate() {
            let mut others = tri.iter().copied().filter(|&x| x != w);
            let (x, y) = (others.next().unwrap(), others.next().unwrap());
            g.add_edge(id(w, x), id(w, y), angles[t][i].clone())?;
            g.add_edge(id(x, w), id(y, w), angles[t][i].clone())?;
        }
    }
    Ok(g)
}

/// Link condition at every vertex: each link must have weighted girth at least `2π`.
pub fn check_link_condition(k: &Complex, m: &PeMetric, tol: f64) -> Result<BTreeMap<String, Verdict>, MetricError> {
    let angles = corner_angles(k, m)?;
    (0..k.vertex_count())
        .map(|v| {
            let link = link_with_angles(k, &angles.angles, v)?;
            let cycle = girth(&link);
            Ok((k.name(v).to_string(), verdict_from_girth(&link, cycle, tol)))
        })
        .collect()
}

/// Whether the angle graph is CAT(1), i.e. has no simple circuit shorter than `2π`.
pub fn check_angle_graph(k: &Complex, m: &PeMetric, tol: f64) -> Result<Verdict, MetricError> {
    let g = angle_graph(k, m)?;
    let cycle = girth(&g);
    Ok(verdict_from_girth(&g, cycle, tol))
}

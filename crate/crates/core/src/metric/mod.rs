//! Piecewise-Euclidean metrics on 2-complexes and the curvature tests built on them.
//!
//! A metric is an assignment of positive lengths to the edges of a complex
//! such that every triangle is a non-degenerate Euclidean triangle. From it we
//! get corner angles, the angle-weighted vertex links, and the angle graph
//! whose vertices are oriented edges. Curvature verdicts reduce to weighted
//! girth against `2π`.

mod angles;
mod iso;
mod link;
mod polygon;
mod torus;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::complex::{Complex, ComplexError};
use crate::weighted::GraphError;

pub use angles::{corner_angle, corner_angle_gradient, DEGENERACY_TOLERANCE};
pub use iso::weighted_isomorphism;
pub use link::{
    angle_graph, build_link, check_angle_graph, check_link_condition, verdict_from_girth, Verdict, Witness,
    DEFAULT_TOLERANCE,
};
pub(crate) use link::angle_graph_with;
pub use polygon::convex_polygon_angles;
pub use torus::{build_t, verify_t_link, TorusComplex, TorusFace, TorusGenerator};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("edge {edge} has non-positive or non-finite length {length}")]
    NonPositive { edge: String, length: f64 },
    #[error("triangle {triangle} is degenerate for lengths ({}, {}, {})", .lengths[0], .lengths[1], .lengths[2])]
    Degenerate { triangle: String, lengths: [f64; 3] },
    #[error("metric has {found} lengths but the complex has {expected} edges")]
    Mismatch { expected: usize, found: usize },
    #[error("metric was built for a different complex")]
    ForeignComplex,
    #[error("edge {0} has no length")]
    MissingLength(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("complex is not connected")]
    Disconnected,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Edge lengths of a piecewise-Euclidean metric, indexed like [`Complex::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeMetric {
    lengths: Vec<f64>,
    fingerprint: u64,
}

fn fingerprint(k: &Complex) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    for e in 0..k.edges().len() {
        k.edge_names(e).hash(&mut h);
    }
    h.finish()
}

impl PeMetric {
    /// Validates positivity and the strict triangle inequality in every triangle.
    pub fn new(k: &Complex, lengths: Vec<f64>) -> Result<Self, MetricError> {
        if lengths.len() != k.edges().len() {
            return Err(MetricError::Mismatch { expected: k.edges().len(), found: lengths.len() });
        }
        for (e, &l) in lengths.iter().enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(MetricError::NonPositive { edge: k.edge_names(e).join("-"), length: l });
            }
        }
        let metric = Self { lengths, fingerprint: fingerprint(k) };
        for t in 0..k.triangles().len() {
            let sides = metric.triangle_sides(k, t);
            if angles::is_degenerate(sides) {
                let [a, b, c] = k.triangles()[t];
                return Err(MetricError::Degenerate {
                    triangle: format!("{} {} {}", k.name(a), k.name(b), k.name(c)),
                    lengths: sides,
                });
            }
        }
        Ok(metric)
    }

    /// Every edge of length one.
    pub fn equilateral(k: &Complex) -> Self {
        Self::new(k, vec![1.0; k.edges().len()]).expect("equilateral triangles are non-degenerate")
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn length(&self, edge: usize) -> f64 {
        self.lengths[edge]
    }

    /// `true` if this metric was built for `k`.
    pub fn fits(&self, k: &Complex) -> bool {
        self.lengths.len() == k.edges().len() && self.fingerprint == fingerprint(k)
    }

    pub(crate) fn ensure_fits(&self, k: &Complex) -> Result<(), MetricError> {
        if self.lengths.len() != k.edges().len() {
            return Err(MetricError::Mismatch { expected: k.edges().len(), found: self.lengths.len() });
        }
        if self.fingerprint != fingerprint(k) {
            return Err(MetricError::ForeignComplex);
        }
        Ok(())
    }

    /// Lengths of the sides opposite each corner of triangle `t`.
    ///
    /// For the sorted corners `[a, b, c]` this is `[|bc|, |ac|, |ab|]`.
    pub fn triangle_sides(&self, k: &Complex, t: usize) -> [f64; 3] {
        let [a, b, c] = k.triangles()[t];
        let len = |x, y| self.lengths[k.edge_id(x, y).expect("triangle faces are edges")];
        [len(b, c), len(a, c), len(a, b)]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { lengths: self.lengths.iter().map(|l| l * factor).collect(), fingerprint: self.fingerprint }
    }

    /// Parses `length <a> <b> <value>` lines. A `default <value>` line covers
    /// every edge not listed; otherwise every edge needs exactly one line.
    pub fn parse(k: &Complex, text: &str) -> Result<Self, MetricError> {
        let mut lengths: Vec<Option<f64>> = vec![None; k.edges().len()];
        let mut default: Option<f64> = None;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let tokens: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
            let malformed = |message: String| MetricError::Malformed { line: line_no, message };
            match tokens.as_slice() {
                [] => {}
                ["length", a, b, value] => {
                    let (u, v) = (k.vertex_id(a)?, k.vertex_id(b)?);
                    let e = k.edge_id(u, v).ok_or_else(|| malformed(format!("`{a} {b}` is not an edge")))?;
                    let value: f64 = value.parse().map_err(|_| malformed(format!("bad length `{value}`")))?;
                    if lengths[e].replace(value).is_some() {
                        return Err(malformed(format!("second length for edge `{a} {b}`")));
                    }
                }
                ["default", value] => {
                    let value: f64 = value.parse().map_err(|_| malformed(format!("bad length `{value}`")))?;
                    if default.replace(value).is_some() {
                        return Err(malformed("second default length".into()));
                    }
                }
                _ => return Err(malformed(format!("cannot read `{}`", line.trim()))),
            }
        }
        let lengths = lengths
            .into_iter()
            .enumerate()
            .map(|(e, l)| l.or(default).ok_or_else(|| MetricError::MissingLength(k.edge_names(e).join("-"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(k, lengths)
    }

    pub fn to_text(&self, k: &Complex) -> String {
        let mut out = String::new();
        for (e, l) in self.lengths.iter().enumerate() {
            let [a, b] = k.edge_names(e);
            let _ = writeln!(out, "length {a} {b} {l}");
        }
        out
    }
}

/// Corner angles of every triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerAngles {
    /// `angles[t][i]` is the angle of triangle `t` at its `i`-th sorted corner.
    pub angles: Vec<[f64; 3]>,
}

impl CornerAngles {
    /// Angle of triangle `t` at vertex `v`, if `v` is a corner of it.
    pub fn at(&self, k: &Complex, t: usize, v: usize) -> Option<f64> {
        k.triangles()[t].iter().position(|&w| w == v).map(|i| self.angles[t][i])
    }

    /// Map `(triangle corners, vertex) -> angle` keyed by names.
    pub fn by_name(&self, k: &Complex) -> BTreeMap<(String, String), f64> {
        let mut out = BTreeMap::new();
        for (t, tri) in k.triangles().iter().enumerate() {
            let label = tri.iter().map(|&v| k.name(v)).collect::<Vec<_>>().join(" ");
            for (i, &v) in tri.iter().enumerate() {
                out.insert((label.clone(), k.name(v).to_string()), self.angles[t][i]);
            }
        }
        out
    }
}

/// Planar law-of-cosines angles at every corner of every triangle.
pub fn corner_angles(k: &Complex, m: &PeMetric) -> Result<CornerAngles, MetricError> {
    m.ensure_fits(k)?;
    let angles = (0..k.triangles().len())
        .map(|t| {
            let [x, y, z] = m.triangle_sides(k, t);
            Ok([corner_angle(y, z, x)?, corner_angle(x, z, y)?, corner_angle(x, y, z)?])
        })
        .collect::<Result<Vec<_>, MetricError>>()?;
    Ok(CornerAngles { angles })
}

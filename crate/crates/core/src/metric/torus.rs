//! The one-vertex complex made of a flat torus per triangle.
//!
//! Each unoriented edge `{u, v}` of `K` (with `u < v`) becomes a loop labelled
//! by the kernel generator `x(u,v)`. A triangle `u < v < w` becomes two
//! Euclidean copies of itself with boundary words `x(u,v) x(v,w) x(u,w)⁻¹` and
//! `x(v,w) x(u,v) x(u,w)⁻¹`, which together form a torus.

use serde::Serialize;

use super::{iso::weighted_isomorphism, link::angle_graph, MetricError, PeMetric};
use crate::complex::Complex;
use crate::weighted::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusGenerator {
    pub label: String,
    /// Edge index in the complex.
    pub edge: usize,
}

/// A triangular face: its boundary word as `(generator, exponent)` letters and
/// the triangle of `K` it copies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusFace {
    pub triangle: usize,
    pub word: [(usize, i8); 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusComplex {
    pub generators: Vec<TorusGenerator>,
    pub faces: Vec<TorusFace>,
}

/// Builds the torus complex of a connected complex.
pub fn build_t(k: &Complex) -> Result<TorusComplex, MetricError> {
    if !k.is_connected() {
        return Err(MetricError::Disconnected);
    }
    let generators = (0..k.edges().len())
        .map(|e| {
            let [a, b] = k.edge_names(e);
            TorusGenerator { label: format!("x({a},{b})"), edge: e }
        })
        .collect();
    let mut faces = Vec::with_capacity(2 * k.triangles().len());
    for (t, &[u, v, w]) in k.triangles().iter().enumerate() {
        let e = |a, b| k.edge_id(a, b).expect("triangle faces are edges");
        let (uv, vw, uw) = (e(u, v), e(v, w), e(u, w));
        faces.push(TorusFace { triangle: t, word: [(uv, 1), (vw, 1), (uw, -1)] });
        faces.push(TorusFace { triangle: t, word: [(vw, 1), (uv, 1), (uw, -1)] });
    }
    Ok(TorusComplex { generators, faces })
}

impl TorusComplex {
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.generators.len() as i64 + self.faces.len() as i64
    }

    /// Relators as text, e.g. `x(a,b) x(b,c) x(a,c)^-1`.
    pub fn face_words(&self) -> Vec<String> {
        self.faces
            .iter()
            .map(|f| {
                f.word
                    .iter()
                    .map(|&(g, s)| {
                        let l = &self.generators[g].label;
                        if s > 0 { l.clone() } else { format!("{l}^-1") }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }

    /// Weighted link of the single vertex.
    ///
    /// Each generator contributes its tail end `x-` and head end `x+`. The
    /// corner of a face between consecutive letters joins the end where the
    /// first letter arrives to the end where the next one departs, weighted by
    /// the Euclidean angle of that face at the corner.
    pub fn vertex_link(&self, m: &PeMetric) -> Result<WeightedGraph, MetricError> {
        let mut g = WeightedGraph::new();
        for gen in &self.generators {
            g.add_vertex(format!("{}-", gen.label))?;
            g.add_vertex(format!("{}+", gen.label))?;
        }
        let tail = |x: usize| 2 * x;
        let head = |x: usize| 2 * x + 1;
        for face in &self.faces {
            let sides = face.word.map(|(x, _)| m.length(self.generators[x].edge));
            for i in 0..3 {
                let (x, sx) = face.word[i];
                let (y, sy) = face.word[(i + 1) % 3];
                let arrive = if sx > 0 { head(x) } else { tail(x) };
                let depart = if sy > 0 { tail(y) } else { head(y) };
                let (p, q, opposite) = (sides[i], sides[(i + 1) % 3], sides[(i + 2) % 3]);
                let cos = (p * p + q * q - opposite * opposite) / (2.0 * p * q);
                g.add_edge(arrive, depart, cos.clamp(-1.0, 1.0).acos())?;
            }
        }
        Ok(g)
    }
}

/// Checks that the link of the vertex of the torus complex is isometric to the angle graph.
pub fn verify_t_link(k: &Complex, m: &PeMetric, tol: f64) -> Result<bool, MetricError> {
    m.ensure_fits(k)?;
    let link = build_t(k)?.vertex_link(m)?;
    let l = angle_graph(k, m)?;
    Ok(weighted_isomorphism(&link, &l, tol).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixture;

    #[test]
    fn single_triangle_torus() {
        let k = fixture("triangle").unwrap().simplicial().unwrap();
        let t = build_t(&k).unwrap();
        assert_eq!((t.generators.len(), t.faces.len()), (3, 2));
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.face_words(), ["x(a,b) x(b,c) x(a,c)^-1", "x(b,c) x(a,b) x(a,c)^-1"]);
        let m = PeMetric::new(&k, vec![1.0, 1.3, 0.9]).unwrap();
        let link = t.vertex_link(&m).unwrap();
        assert_eq!((link.vertex_count(), link.edge_count()), (6, 6));
        assert!(verify_t_link(&k, &m, 1e-9).unwrap());
    }

    #[test]
    fn euler_characteristic_counts_cells() {
        let k = fixture("k0").unwrap().simplicial().unwrap();
        let t = build_t(&k).unwrap();
        assert_eq!(t.euler_characteristic(), 1 - 11 + 12);
        assert!(verify_t_link(&k, &PeMetric::equilateral(&k), 1e-9).unwrap());
    }

    #[test]
    fn disconnected_complexes_are_rejected() {
        let k = Complex::from_triangles(&[["a", "b", "c"], ["d", "e", "f"]]).unwrap();
        assert!(matches!(build_t(&k), Err(MetricError::Disconnected)));
    }
}

//! Rechecking a metric with 256-bit floating point.

use std::cmp::Ordering;
use std::ops::Add;

use astro_float::{BigFloat, Consts, RoundingMode};
use serde::Serialize;

use super::SearchMode;
use crate::complex::Complex;
use crate::metric::{verdict_from_girth, MetricError, PeMetric, Verdict, Witness};
use crate::weighted::{girth, Cycle, Weight, WeightedGraph};

/// Working precision of the recheck, in bits (four times `f64`'s mantissa).
pub const CERTIFICATE_PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

/// A 256-bit float usable as a graph weight.
#[derive(Debug, Clone)]
struct Wide(BigFloat);

impl PartialEq for Wide {
    fn eq(&self, other: &Self) -> bool {
        self.0.partial_cmp(&other.0) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Wide {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for Wide {
    type Output = Wide;

    fn add(self, rhs: Wide) -> Wide {
        Wide(self.0.add(&rhs.0, CERTIFICATE_PRECISION, RM))
    }
}

impl Weight for Wide {
    fn zero() -> Self {
        Wide(BigFloat::from_f64(0.0, CERTIFICATE_PRECISION))
    }

    fn is_valid(&self) -> bool {
        !self.0.is_nan() && self.0.is_positive()
    }
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

struct Wider {
    cc: Consts,
    two_pi: BigFloat,
}

impl Wider {
    fn new() -> Self {
        let mut cc = Consts::new().expect("constant cache");
        let pi = cc.pi(CERTIFICATE_PRECISION, RM);
        let two_pi = pi.mul(&BigFloat::from_f64(2.0, CERTIFICATE_PRECISION), CERTIFICATE_PRECISION, RM);
        Self { cc, two_pi }
    }

    /// Angle between sides `a` and `b` opposite `c`, by the law of cosines.
    fn angle(&mut self, a: f64, b: f64, c: f64) -> BigFloat {
        let p = CERTIFICATE_PRECISION;
        let [a, b, c] = [a, b, c].map(|x| BigFloat::from_f64(x, p));
        let sq = |x: &BigFloat| x.mul(x, p, RM);
        let num = sq(&a).add(&sq(&b), p, RM).sub(&sq(&c), p, RM);
        let den = a.mul(&b, p, RM).mul(&BigFloat::from_f64(2.0, p), p, RM);
        num.div(&den, p, RM).acos(p, RM, &mut self.cc)
    }

    fn verdict(&self, g: &WeightedGraph<Wide>, tol: f64) -> Verdict {
        let cycle = girth(g);
        match cycle {
            None => verdict_from_girth(&WeightedGraph::new(), None, tol),
            Some(Cycle { vertices, length }) => {
                let slack = to_f64(&length.0.sub(&self.two_pi, CERTIFICATE_PRECISION, RM));
                Verdict {
                    passes: slack >= -tol,
                    boundary: slack.abs() <= tol,
                    vacuous: false,
                    witness: Some(Witness {
                        cycle: vertices.iter().map(|&v| g.label(v).to_string()).collect(),
                        length: to_f64(&length.0),
                    }),
                    slack: Some(slack),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub mode: SearchMode,
    /// The worst verdict: of the angle graph, or of the worst vertex link.
    pub verdict: Verdict,
    /// Vertex whose link gave the verdict, in links mode.
    pub vertex: Option<String>,
    pub precision_bits: usize,
}

/// Recomputes every corner angle and every girth at 256-bit precision.
///
/// The verdict passes only if the high-precision slack is at least `-tol`.
pub fn verify_certificate(k: &Complex, m: &PeMetric, mode: SearchMode, tol: f64) -> Result<Certificate, MetricError> {
    m.ensure_fits(k)?;
    let mut wide = Wider::new();
    let mut angles = Vec::with_capacity(k.triangles().len());
    for t in 0..k.triangles().len() {
        let [x, y, z] = m.triangle_sides(k, t);
        if crate::metric::corner_angle(x, y, z).is_err() {
            let [a, b, c] = k.triangles()[t].map(|v| k.name(v).to_string());
            return Err(MetricError::Degenerate { triangle: format!("{a} {b} {c}"), lengths: [x, y, z] });
        }
        angles.push([wide.angle(y, z, x), wide.angle(x, z, y), wide.angle(x, y, z)].map(Wide));
    }
    let (verdict, vertex) = match mode {
        SearchMode::Global => {
            let g = crate::metric::angle_graph_with(k, &angles)?;
            (wide.verdict(&g, tol), None)
        }
        SearchMode::Links => {
            let mut worst: Option<(Verdict, String)> = None;
            for v in 0..k.vertex_count() {
                let neighbours = &k.adjacency()[v];
                let mut g = WeightedGraph::with_vertices(neighbours.iter().map(|&w| k.name(w).to_string()))?;
                let slot = |w: usize| neighbours.binary_search(&w).expect("corner is a neighbour");
                for (t, a, b) in k.link_triangles(v) {
                    let corner = k.triangles()[t].iter().position(|&w| w == v).unwrap();
                    g.add_edge(slot(a), slot(b), angles[t][corner].clone())?;
                }
                let verdict = wide.verdict(&g, tol);
                let key = verdict.slack.unwrap_or(f64::INFINITY);
                if worst.as_ref().is_none_or(|(w, _)| key < w.slack.unwrap_or(f64::INFINITY)) {
                    worst = Some((verdict, k.name(v).to_string()));
                }
            }
            match worst {
                Some((v, name)) if !v.vacuous => (v, Some(name)),
                Some((v, _)) => (v, None),
                None => (verdict_from_girth(&WeightedGraph::new(), None, tol), None),
            }
        }
    };
    Ok(Certificate { mode, verdict, vertex, precision_bits: CERTIFICATE_PRECISION })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixture;

    #[test]
    fn wide_pi_agrees_with_f64() {
        let w = Wider::new();
        assert_eq!(to_f64(&w.two_pi), std::f64::consts::TAU);
    }

    #[test]
    fn wide_angles_agree_with_f64() {
        let mut w = Wider::new();
        let a = to_f64(&w.angle(3.0, 4.0, 5.0));
        assert!((a - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let b = to_f64(&w.angle(1.0, 1.3, 0.9));
        assert!((b - crate::metric::corner_angle(1.0, 1.3, 0.9).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn equilateral_k0_fails_at_an_inner_vertex() {
        let k = fixture("k0").unwrap().simplicial().unwrap();
        let c = verify_certificate(&k, &PeMetric::equilateral(&k), SearchMode::Links, 1e-9).unwrap();
        assert!(!c.verdict.passes);
        assert_eq!(c.vertex.as_deref(), Some("u2"));
        assert_eq!(c.verdict.witness.as_ref().unwrap().cycle.len(), 4);
        assert!((c.verdict.slack.unwrap() + 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
    }
}

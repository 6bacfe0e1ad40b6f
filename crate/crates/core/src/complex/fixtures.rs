//! Named complexes used throughout the tests, the examples and the CLI.

use super::{suspension, Complex, ComplexError, DeltaComplex, Graph, OrientedEdge};

pub const FIXTURE_NAMES: [&str; 9] =
    ["triangle", "two_triangles", "path4", "k0", "dunce_hat", "dunce_hat_flag", "torus", "rp2", "annulus"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// A single 2-simplex `a b c`.
    Triangle,
    /// Two simplices `u v w` and `u v z` sharing the edge `u v`.
    TwoTriangles,
    /// The path `u1 - u2 - u3 - u4` as a 1-dimensional complex.
    Path4,
    /// Suspension of `path4` with apexes `p`, `q`.
    K0,
    /// The one-triangle Δ-complex of the dunce hat.
    DunceHat,
    /// Third barycentric subdivision of the dunce hat.
    DunceHatFlag,
    /// 4 x 4 grid triangulation of the torus (flag).
    Torus,
    /// Six-vertex triangulation of the projective plane (not flag).
    Rp2,
    /// Triangulated annulus: a square inside an octagon.
    Annulus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureComplex {
    Simplicial(Complex),
    Delta(DeltaComplex),
}

impl FixtureComplex {
    pub fn simplicial(self) -> Option<Complex> {
        match self {
            Self::Simplicial(k) => Some(k),
            Self::Delta(_) => None,
        }
    }
}

impl std::str::FromStr for Fixture {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "triangle" => Self::Triangle,
            "two_triangles" => Self::TwoTriangles,
            "path4" => Self::Path4,
            "k0" => Self::K0,
            "dunce_hat" => Self::DunceHat,
            "dunce_hat_flag" => Self::DunceHatFlag,
            "torus" => Self::Torus,
            "rp2" => Self::Rp2,
            "annulus" => Self::Annulus,
            other => return Err(ComplexError::UnknownFixture(other.to_string())),
        })
    }
}

impl Fixture {
    pub fn build(self) -> FixtureComplex {
        use FixtureComplex::*;
        let k = |r: Result<Complex, ComplexError>| Simplicial(r.expect("fixture data is valid"));
        match self {
            Self::Triangle => k(Complex::from_triangles(&[["a", "b", "c"]])),
            Self::TwoTriangles => k(Complex::from_triangles(&[["u", "v", "w"], ["u", "v", "z"]])),
            Self::Path4 => k(Complex::new(
                &["u1", "u2", "u3", "u4"],
                &[["u1", "u2"], ["u2", "u3"], ["u3", "u4"]],
                &[],
            )),
            Self::K0 => k(suspension(&Graph::path(&["u1", "u2", "u3", "u4"]))),
            Self::DunceHat => Delta(DeltaComplex::dunce_hat()),
            Self::DunceHatFlag => {
                let d = DeltaComplex::dunce_hat()
                    .barycentric_subdivision()
                    .barycentric_subdivision()
                    .barycentric_subdivision();
                k(d.to_simplicial())
            }
            Self::Torus => k(Complex::from_triangles(&torus_grid(4))),
            Self::Rp2 => k(Complex::from_triangles(&[
                ["1", "2", "3"],
                ["1", "3", "4"],
                ["1", "4", "5"],
                ["1", "5", "6"],
                ["1", "2", "6"],
                ["2", "3", "5"],
                ["3", "4", "6"],
                ["2", "4", "5"],
                ["3", "5", "6"],
                ["2", "4", "6"],
            ])),
            Self::Annulus => {
                let inner = |i: usize| format!("i{}", i % 4);
                let outer = |i: usize| format!("o{}", i % 8);
                let mut tris = Vec::new();
                for i in 0..4 {
                    tris.push([inner(i), outer(2 * i), outer(2 * i + 1)]);
                    tris.push([inner(i), inner(i + 1), outer(2 * i + 1)]);
                    tris.push([inner(i + 1), outer(2 * i + 1), outer(2 * i + 2)]);
                }
                k(Complex::from_triangles(&tris))
            }
        }
    }
}

/// Looks a fixture up by name.
pub fn fixture(name: &str) -> Result<FixtureComplex, ComplexError> {
    Ok(name.parse::<Fixture>()?.build())
}

fn torus_grid(n: usize) -> Vec<[String; 3]> {
    let v = |i: usize, j: usize| format!("t{}{}", i % n, j % n);
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..n {
            tris.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tris.push([v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    tris
}

/// Labels of the oriented edges of `k0`, as `(label, source, target)`.
///
/// `a`, `x`, `e` run along the path (`a = (u2,u1)`, `x = (u2,u3)`,
/// `e = (u3,u4)`), matching the kernel generators `u2⁻¹u1`, `u2⁻¹u3` and
/// `u3⁻¹u4`. The remaining labels point away from an apex. With these
/// orientations the four circuits used in the K₀ report are closed paths in
/// the angle graph; `x^-1` denotes the reverse of `x`.
pub const K0_LABELS: [(&str, &str, &str); 11] = [
    ("a", "u2", "u1"),
    ("x", "u2", "u3"),
    ("e", "u3", "u4"),
    ("u", "p", "u1"),
    ("b", "p", "u2"),
    ("h", "p", "u3"),
    ("r", "p", "u4"),
    ("v", "q", "u1"),
    ("d", "q", "u2"),
    ("k", "q", "u3"),
    ("s", "q", "u4"),
];

/// Resolves a `k0` label such as `b` or `x^-1` to an oriented edge of `k`.
pub fn k0_label(k: &Complex, label: &str) -> Result<OrientedEdge, ComplexError> {
    let (base, inverse) = match label.strip_suffix("^-1") {
        Some(base) => (base, true),
        None => (label, false),
    };
    let &(_, s, t) = K0_LABELS
        .iter()
        .find(|(l, _, _)| *l == base)
        .ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))?;
    let e = OrientedEdge::new(k.vertex_id(s)?, k.vertex_id(t)?);
    Ok(if inverse { e.reversed() } else { e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::f_vector;

    fn simplicial(name: &str) -> Complex {
        fixture(name).unwrap().simplicial().unwrap()
    }

    #[test]
    fn triangle_fixture() {
        let k = simplicial("triangle");
        let report = k.check_flag();
        assert_eq!(f_vector(&k), [3, 3, 1]);
        assert!(report.is_flag);
        assert_eq!(report.free_edges.len(), 3);
    }

    #[test]
    fn k0_counts_and_free_edges() {
        let k = simplicial("k0");
        assert_eq!(f_vector(&k), [6, 11, 6]);
        let report = k.check_flag();
        assert!(report.is_flag && report.connected);
        let mut free: Vec<String> = report.free_edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
        free.sort();
        assert_eq!(free, ["p-u1", "p-u4", "q-u1", "q-u4"]);
    }

    #[test]
    fn k0_labels_cover_every_edge_once() {
        let k = simplicial("k0");
        let mut seen: Vec<usize> = K0_LABELS
            .iter()
            .map(|(l, _, _)| {
                let e = k0_label(&k, l).unwrap();
                k.edge_id(e.source, e.target).unwrap()
            })
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..11).collect::<Vec<_>>());
        assert_eq!(k0_label(&k, "x^-1").unwrap(), k0_label(&k, "x").unwrap().reversed());
        assert!(k0_label(&k, "z").is_err());
    }

    #[test]
    fn k0_link_at_apex_is_the_path() {
        let k = simplicial("k0");
        let link = k.link_graph("p").unwrap();
        assert_eq!(link.vertices(), ["u1", "u2", "u3", "u4"]);
        assert_eq!(link.edge_names().collect::<Vec<_>>(), vec![["u1", "u2"], ["u2", "u3"], ["u3", "u4"]]);
        let link = k.link_graph("u2").unwrap();
        assert_eq!(link.edge_count(), 4);
        assert!(!link.is_forest());
    }

    #[test]
    fn dunce_hat_flag_is_flag_without_free_edges() {
        let k = simplicial("dunce_hat_flag");
        let report = k.check_flag();
        assert!(report.is_flag && report.connected);
        assert!(report.free_edges.is_empty());
        assert_eq!(k.triangles().len(), 216);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn surfaces() {
        let torus = simplicial("torus");
        assert!(torus.check_flag().is_flag);
        assert_eq!(torus.euler_characteristic(), 0);
        assert!(torus.check_flag().free_edges.is_empty());
        let rp2 = simplicial("rp2");
        assert!(!rp2.check_flag().is_flag);
        assert_eq!(rp2.euler_characteristic(), 1);
        assert!(rp2.edge_degrees().iter().all(|&d| d == 2));
        let annulus = simplicial("annulus");
        assert!(annulus.check_flag().is_flag);
        assert_eq!(annulus.euler_characteristic(), 0);
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(fixture("klein"), Err(ComplexError::UnknownFixture(_))));
        for name in FIXTURE_NAMES {
            assert!(fixture(name).is_ok(), "{name}");
        }
    }
}

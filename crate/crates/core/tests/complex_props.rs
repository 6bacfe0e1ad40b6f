use flagcat::complex::{fixture, suspension, Complex, DeltaComplex, Graph, FIXTURE_NAMES};
use flagcat::homology::homology;
use flagcat::metric::{angle_graph, PeMetric};
use flagcat::search::K0_CIRCUITS;
use proptest::prelude::*;

/// Edge flags for the pairs `(a, b)`, `a < b`, of `n` vertices.
fn graph_from(n: usize, flags: &[bool]) -> Graph {
    let mut g = Graph::new((0..n).map(|v| format!("g{v}")));
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    for ((a, b), &on) in pairs.zip(flags) {
        if on {
            g.add_edge(&format!("g{a}"), &format!("g{b}")).unwrap();
        }
    }
    g
}

fn triangle_free(n: usize, flags: &[bool]) -> Graph {
    let mut g = Graph::new((0..n).map(|v| format!("g{v}")));
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    for ((a, b), &on) in pairs.zip(flags) {
        let closes_triangle = (0..n).any(|c| g.has_edge(a, c) && g.has_edge(b, c));
        if on && !closes_triangle {
            g.add_edge(&format!("g{a}"), &format!("g{b}")).unwrap();
        }
    }
    g
}

fn random_complex(n: usize, picks: &[(usize, usize, usize)]) -> Option<Complex> {
    let mut triples: Vec<[usize; 3]> = picks
        .iter()
        .map(|&(a, b, c)| {
            let mut t = [a % n, b % n, c % n];
            t.sort_unstable();
            t
        })
        .filter(|t| t[0] != t[1] && t[1] != t[2])
        .collect();
    triples.sort_unstable();
    triples.dedup();
    let tris: Vec<[String; 3]> = triples.iter().map(|t| t.map(|v| format!("v{v}"))).collect();
    (!tris.is_empty()).then(|| Complex::from_triangles(&tris).unwrap())
}

proptest! {
    #[test]
    fn suspensions_of_triangle_free_graphs_are_flag(n in 1usize..=8, flags in prop::collection::vec(any::<bool>(), 28)) {
        let k = suspension(&triangle_free(n, &flags)).unwrap();
        prop_assert!(k.check_flag().is_flag);
    }

    #[test]
    fn graphs_with_triangles_have_no_suspension(n in 3usize..=8, flags in prop::collection::vec(any::<bool>(), 28)) {
        let g = graph_from(n, &flags);
        let has_triangle = (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))));
        prop_assert_eq!(suspension(&g).is_err(), has_triangle);
    }

    #[test]
    fn faces_close_and_orientations_double(n in 3usize..=9, picks in prop::collection::vec((0usize..9, 0usize..9, 0usize..9), 1..14)) {
        if let Some(k) = random_complex(n, &picks) {
            for &[a, b, c] in k.triangles() {
                prop_assert!(k.is_edge(a, b) && k.is_edge(b, c) && k.is_edge(a, c));
            }
            prop_assert_eq!(k.oriented_edges().len(), 2 * k.edges().len());
        }
    }

    #[test]
    fn subdivision_has_a_vertex_per_cell(n in 3usize..=8, picks in prop::collection::vec((0usize..8, 0usize..8, 0usize..8), 1..10)) {
        if let Some(k) = random_complex(n, &picks) {
            let d = DeltaComplex::from_simplicial(&k);
            let sd = d.barycentric_subdivision();
            prop_assert_eq!(sd.vertex_count(), d.cell_count());
            prop_assert_eq!(sd.euler_characteristic(), d.euler_characteristic());
        }
    }

    #[test]
    fn euler_characteristic_is_the_alternating_betti_sum(n in 3usize..=9, picks in prop::collection::vec((0usize..9, 0usize..9, 0usize..9), 1..16)) {
        if let Some(k) = random_complex(n, &picks) {
            let h = homology(&k);
            prop_assert_eq!(k.euler_characteristic(), h.betti[0] as i64 - h.betti[1] as i64 + h.betti[2] as i64);
        }
    }
}

#[test]
fn homology_survives_subdivision() {
    for name in ["triangle", "torus", "rp2"] {
        let k = fixture(name).unwrap().simplicial().unwrap();
        let sd = DeltaComplex::from_simplicial(&k).barycentric_subdivision().to_simplicial().unwrap();
        assert_eq!(homology(&sd), homology(&k), "{name}");
    }
}

#[test]
fn fixtures_round_trip_through_text() {
    for name in FIXTURE_NAMES {
        if let Some(k) = fixture(name).unwrap().simplicial() {
            assert_eq!(Complex::parse(&k.to_text()).unwrap(), k, "{name}");
        }
    }
}

#[test]
fn k0_circuits_step_between_adjacent_oriented_edges() {
    let k0 = fixture("k0").unwrap().simplicial().unwrap();
    let l = angle_graph(&k0, &PeMetric::equilateral(&k0)).unwrap();
    for (name, labels) in K0_CIRCUITS {
        let ids: Vec<usize> = labels
            .iter()
            .map(|lab| l.find(&k0.oriented_edge_label(flagcat::complex::k0_label(&k0, lab).unwrap())).unwrap())
            .collect();
        assert!(ids.windows(2).all(|w| l.weight(w[0], w[1]).is_some()), "{name}");
    }
}

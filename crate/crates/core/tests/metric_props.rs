mod support;

use std::f64::consts::{PI, TAU};

use flagcat::complex::{fixture, Complex};
use flagcat::metric::{
    angle_graph, check_angle_graph, check_link_condition, convex_polygon_angles, corner_angles, PeMetric,
    DEFAULT_TOLERANCE,
};
use flagcat::weighted::{girth, WeightedGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn k(name: &str) -> Complex {
    fixture(name).unwrap().simplicial().unwrap()
}

fn fixture_names() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["triangle", "two_triangles", "k0", "torus", "annulus"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corner_angles_sum_to_pi(name in fixture_names(), seed in any::<u64>()) {
        let c = k(name);
        let m = support::wide_metric(&c, &mut ChaCha8Rng::seed_from_u64(seed));
        for a in corner_angles(&c, &m).unwrap().angles {
            prop_assert!((a.iter().sum::<f64>() - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn each_simplex_contributes_a_hexagon_of_weight_two_pi(name in fixture_names(), seed in any::<u64>()) {
        let c = k(name);
        let m = support::narrow_metric(&c, &mut ChaCha8Rng::seed_from_u64(seed));
        let l = angle_graph(&c, &m).unwrap();
        let node = |a: usize, b: usize| l.find(&format!("{}->{}", c.name(a), c.name(b))).unwrap();
        for &[a, b, cc] in c.triangles() {
            let mut total = 0.0;
            for (v, x, y) in [(a, b, cc), (b, a, cc), (cc, a, b)] {
                total += l.weight(node(v, x), node(v, y)).unwrap();
                total += l.weight(node(x, v), node(y, v)).unwrap();
            }
            prop_assert!((total - TAU).abs() < 1e-12);
        }
    }

    #[test]
    fn power_of_two_scaling_is_exact(name in fixture_names(), seed in any::<u64>(), e in -20i32..=20) {
        let c = k(name);
        let m = support::narrow_metric(&c, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = m.scaled(2f64.powi(e));
        prop_assert_eq!(angle_graph(&c, &m).unwrap(), angle_graph(&c, &s).unwrap());
        prop_assert_eq!(check_angle_graph(&c, &m, DEFAULT_TOLERANCE).unwrap(), check_angle_graph(&c, &s, DEFAULT_TOLERANCE).unwrap());
        prop_assert_eq!(check_link_condition(&c, &m, DEFAULT_TOLERANCE).unwrap(), check_link_condition(&c, &s, DEFAULT_TOLERANCE).unwrap());
    }

    #[test]
    fn real_scaling_keeps_verdicts(name in fixture_names(), seed in any::<u64>(), lambda in 1e-3f64..1e3) {
        let c = k(name);
        let m = support::narrow_metric(&c, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = m.scaled(lambda);
        let (l, ls) = (angle_graph(&c, &m).unwrap(), angle_graph(&c, &s).unwrap());
        for (a, b) in l.edges().iter().zip(ls.edges()) {
            prop_assert_eq!((a.0, a.1), (b.0, b.1));
            prop_assert!((a.2 - b.2).abs() <= 1e-12 * a.2);
        }
        let (v, vs) = (check_angle_graph(&c, &m, DEFAULT_TOLERANCE).unwrap(), check_angle_graph(&c, &s, DEFAULT_TOLERANCE).unwrap());
        prop_assert_eq!((v.passes, v.boundary, v.vacuous), (vs.passes, vs.boundary, vs.vacuous));
    }

    #[test]
    fn angle_graph_pass_implies_link_pass(name in fixture_names(), seed in any::<u64>(), narrow in any::<bool>()) {
        let c = k(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = if narrow { support::narrow_metric(&c, &mut rng) } else { support::wide_metric(&c, &mut rng) };
        if check_angle_graph(&c, &m, DEFAULT_TOLERANCE).unwrap().passes {
            prop_assert!(check_link_condition(&c, &m, DEFAULT_TOLERANCE).unwrap().values().all(|v| v.passes));
        }
    }

    #[test]
    fn girth_matches_exhaustive_search(n in 3usize..=10, raw in prop::collection::vec(prop::option::weighted(0.4, 1u32..=500), 45)) {
        let mut g = WeightedGraph::with_vertices((0..n).map(|v| v.to_string())).unwrap();
        let mut edges = Vec::new();
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        for ((a, b), w) in pairs.zip(raw) {
            if let Some(w) = w {
                let w = w as f64 / 32.0;
                g.add_edge(a, b, w).unwrap();
                edges.push((a, b, w));
            }
        }
        prop_assert_eq!(girth(&g).map(|c| c.length), support::brute_force_girth(n, &edges));
    }

    #[test]
    fn regular_polygons_have_flat_angle_sums(m in 3usize..=12, r in 0.1f64..10.0, phase in 0.0f64..TAU) {
        let pts: Vec<[f64; 2]> = (0..m).map(|i| {
            let t = phase + TAU * i as f64 / m as f64;
            [r * t.cos(), r * t.sin()]
        }).collect();
        let angles = convex_polygon_angles(&pts).unwrap();
        prop_assert!((angles.iter().sum::<f64>() - (m as f64 - 2.0) * PI).abs() < 1e-9);
        for a in angles {
            prop_assert!((a - PI * (m as f64 - 2.0) / m as f64).abs() < 1e-9);
        }
    }
}

#[test]
fn metric_files_accept_a_default_length() {
    let k0 = k("k0");
    let m = PeMetric::parse(&k0, "default 1\nlength p u2 1.5\n").unwrap();
    let e = k0.edge_id(k0.vertex_id("p").unwrap(), k0.vertex_id("u2").unwrap()).unwrap();
    assert_eq!(m.length(e), 1.5);
    assert_eq!(m.lengths().iter().filter(|&&l| l == 1.0).count(), k0.edges().len() - 1);
    assert!(PeMetric::parse(&k0, "length p u2 1.5\n").is_err());
    assert!(PeMetric::parse(&k0, "default 1\ndefault 2\n").is_err());
    assert_eq!(PeMetric::parse(&k0, &m.to_text(&k0)).unwrap(), m);
}

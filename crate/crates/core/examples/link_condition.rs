//! Link condition versus the angle-graph criterion on the bundled fixtures,
//! all with equilateral metrics.
//!
//! Run with `cargo run --example link_condition`.

use flagcat::complex::fixture;
use flagcat::metric::{check_angle_graph, check_link_condition, PeMetric, DEFAULT_TOLERANCE};

fn main() -> anyhow::Result<()> {
    for name in ["triangle", "two_triangles", "k0", "torus", "annulus"] {
        let k = fixture(name)?.simplicial().expect("simplicial fixture");
        let m = PeMetric::equilateral(&k);
        let links = check_link_condition(&k, &m, DEFAULT_TOLERANCE)?;
        let failing: Vec<&str> = links.iter().filter(|(_, v)| !v.passes).map(|(n, _)| n.as_str()).collect();
        let l = check_angle_graph(&k, &m, DEFAULT_TOLERANCE)?;
        println!("{name}");
        println!("  links failing: {}", if failing.is_empty() { "none".into() } else { failing.join(" ") });
        match (&l.slack, &l.witness) {
            (Some(s), Some(w)) => println!("  L(K) girth {:.6}, slack {s:+.6}, circuit {}", w.length, w.cycle.join(" ")),
            _ => println!("  L(K) has no circuit"),
        }
        println!("  CAT(1) angle graph: {}{}", l.passes, if l.boundary { " (boundary case)" } else { "" });
    }
    Ok(())
}

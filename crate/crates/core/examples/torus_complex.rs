//! The one-vertex complex T(K): its faces, and the check that its vertex link
//! is the angle graph L(K) for random metrics.
//!
//! Run with `cargo run --example torus_complex -- [seed]`.

use flagcat::complex::fixture;
use flagcat::metric::{build_t, verify_t_link, PeMetric, DEFAULT_TOLERANCE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in ["triangle", "two_triangles", "k0"] {
        let k = fixture(name)?.simplicial().expect("simplicial fixture");
        let t = build_t(&k)?;
        println!("{name}: T(K) has {} edges, {} faces, euler {}", t.generators.len(), t.faces.len(), t.euler_characteristic());
        for w in t.face_words().iter().take(4) {
            println!("  {w}");
        }
        // Lengths in [1, 1.3] satisfy every triangle inequality.
        let m = PeMetric::new(&k, (0..k.edges().len()).map(|_| rng.gen_range(1.0..1.3)).collect())?;
        println!("  link matches L(K): {}", verify_t_link(&k, &m, DEFAULT_TOLERANCE)?);
    }
    Ok(())
}

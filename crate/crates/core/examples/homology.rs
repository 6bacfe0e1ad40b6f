//! Integral homology of every simplicial fixture, with flag and Euler checks.
//!
//! Run with `cargo run --example homology`.

use flagcat::complex::{fixture, FIXTURE_NAMES};
use flagcat::homology::homology;

fn main() -> anyhow::Result<()> {
    for name in FIXTURE_NAMES {
        let Some(k) = fixture(name)?.simplicial() else {
            println!("{name}: Δ-complex only, see dunce_hat_flag\n");
            continue;
        };
        let h = homology(&k);
        let flag = k.check_flag();
        println!(
            "{name}: {} vertices, {} edges, {} triangles, flag {}, euler {}",
            k.vertex_count(),
            k.edges().len(),
            k.triangles().len(),
            flag.is_flag,
            k.euler_characteristic()
        );
        println!("{h}\n");
    }
    Ok(())
}

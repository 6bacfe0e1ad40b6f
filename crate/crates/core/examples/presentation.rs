//! Kernel presentations: triangle relators for K₀, truncated cycle relators
//! for the annulus.
//!
//! Run with `cargo run --example presentation`.

use flagcat::complex::fixture;
use flagcat::raag::{presentation, PresentationMode};

fn main() -> anyhow::Result<()> {
    let k0 = fixture("k0")?.simplicial().expect("simplicial fixture");
    // K₀ is a cone over a path, hence contractible: the attestation holds.
    print!("{}", presentation(&k0, PresentationMode::Triangle { simply_connected: true })?);
    println!();

    let annulus = fixture("annulus")?.simplicial().expect("simplicial fixture");
    let p = presentation(&annulus, PresentationMode::Cycles { max_cycle: Some(4), max_n: Some(1) })?;
    print!("{p}");
    Ok(())
}

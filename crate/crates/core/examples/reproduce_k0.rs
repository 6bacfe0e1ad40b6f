//! The suspended path K₀: the four circuits, the length identity on random
//! metrics, and a global search showing L(K₀) stays below 2π.
//!
//! Run with `cargo run --release --example reproduce_k0 -- [restarts] [seed]`.

use flagcat::search::{k0_report, SearchConfig, SearchMode};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let restarts = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let cfg = SearchConfig::new(SearchMode::Global).with_restarts(restarts).with_seed(seed);
    let report = k0_report(50, &cfg)?;
    println!("{report}");
    Ok(())
}

//! Multi-start metric search on the suspended path, in both modes.
//!
//! Run with `cargo run --release --example metric_search -- [restarts] [seed]`.

use flagcat::complex::fixture;
use flagcat::search::{search_metric, SearchConfig, SearchMode};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let restarts = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let k0 = fixture("k0")?.simplicial().expect("simplicial fixture");

    for mode in [SearchMode::Links, SearchMode::Global] {
        let cfg = SearchConfig::new(mode).with_restarts(restarts).with_seed(seed);
        let started = std::time::Instant::now();
        let result = search_metric(&k0, &cfg)?;
        println!("{result}");
        let fallbacks = result.restarts.iter().filter(|r| r.simplex_fallback).count();
        let iterations: usize = result.restarts.iter().map(|r| r.iterations).sum();
        println!("simplex fallbacks: {fallbacks}, total iterations: {iterations}, {:.2?}\n", started.elapsed());
    }
    Ok(())
}

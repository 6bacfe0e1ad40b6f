//! Distortion of the kernel of the path group: free length of w_N against
//! its geodesic length in the ambient group.
//!
//! Run with `cargo run --release --example distortion -- [nmax]`.

use flagcat::raag::distortion_table;

fn main() -> anyhow::Result<()> {
    let nmax = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    println!("{:>4} {:>8} {:>8} {:>8} {:>8} {:>10}", "N", "free", "written", "geodesic", "ratio", "(N+1)/3");
    for r in distortion_table(nmax) {
        println!(
            "{:>4} {:>8} {:>8} {:>8} {:>8.3} {:>10.3}",
            r.n,
            r.free_length,
            r.written_length,
            r.geodesic_length,
            r.ratio,
            (r.n as f64 + 1.0) / 3.0
        );
    }
    Ok(())
}

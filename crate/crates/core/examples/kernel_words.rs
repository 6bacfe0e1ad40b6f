//! Words in the right-angled Artin group of the path u1 - u2 - u3 - u4:
//! normal forms, the word problem, and rewriting kernel elements in the
//! edge generators of the suspended path.
//!
//! Run with `cargo run --example kernel_words -- "<word>"`.

use std::sync::Arc;

use flagcat::complex::fixture;
use flagcat::raag::{equal, kernel_membership, kernel_rewrite, reduce, CommutationGraph, RaagWord};

fn main() -> anyhow::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "u2 u1 u3 u2^-1 u4^-1 u1^-1".into());
    let path = Arc::new(CommutationGraph::path(4));
    let w = RaagWord::parse(path.clone(), &text)?;
    let r = reduce(&w);
    println!("word:      {w}");
    println!("reduced:   {r}  (length {} -> {})", w.len(), r.len());
    println!("in kernel: {}", kernel_membership(&w));

    // u1 and u2 commute, u1 and u3 do not.
    for other in ["u1 u2 u3 u2^-1 u4^-1 u1^-1", "u2 u3 u1 u2^-1 u4^-1 u1^-1"] {
        let v = RaagWord::parse(path.clone(), other)?;
        println!("{w} = {v}: {}", equal(&w, &v)?);
    }

    // The same letters read in the suspension K₀, whose commutation graph
    // also contains the apexes p and q.
    let k0 = fixture("k0")?.simplicial().expect("simplicial fixture");
    let ambient = Arc::new(CommutationGraph::from_complex(&k0));
    let lifted = RaagWord::parse(ambient, &format!("{text} p q^-1"))?;
    if kernel_membership(&lifted) {
        let rewritten = kernel_rewrite(&lifted, &k0, "u2", None)?;
        println!("{lifted} in kernel generators ({} letters):", rewritten.len());
        println!("  {}", rewritten.to_text(&k0));
    }
    Ok(())
}

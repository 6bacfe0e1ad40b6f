//! Distortion of the free kernel of the path on four vertices.
//!
//! With `a = u2⁻¹u1`, `x = u2⁻¹u3`, `e = u3⁻¹u4` (a free basis of the kernel)
//! the elements `w_N = (a x^N e x^-N)^N` have free length `2(N² + N)`, while in
//! the ambient group they equal `u2^-N (u2⁻¹u1 u3⁻¹u4)^N u2^N` of length `6N`.

use std::sync::Arc;

use serde::Serialize;

use super::{reduce, CommutationGraph, RaagWord};

pub fn path4() -> Arc<CommutationGraph> {
    Arc::new(CommutationGraph::path(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Basis {
    A,
    X,
    E,
}

/// `w_N` as a freely reduced word in the basis, as `(letter, ±1)`.
fn free_word(n: usize) -> Vec<(Basis, i8)> {
    let mut block = vec![(Basis::A, 1)];
    block.extend(std::iter::repeat_n((Basis::X, 1), n));
    block.push((Basis::E, 1));
    block.extend(std::iter::repeat_n((Basis::X, -1), n));
    let word: Vec<_> = block.iter().copied().cycle().take(block.len() * n).collect();
    let mut out: Vec<(Basis, i8)> = Vec::with_capacity(word.len());
    for (b, s) in word {
        if out.last() == Some(&(b, -s)) {
            out.pop();
        } else {
            out.push((b, s));
        }
    }
    out
}

/// `w_N` written in the generators of the ambient group.
pub fn w_n(n: usize) -> RaagWord {
    let g = path4();
    let text: Vec<&str> = free_word(n)
        .into_iter()
        .map(|(b, s)| match (b, s > 0) {
            (Basis::A, true) => "u2^-1 u1",
            (Basis::A, false) => "u1^-1 u2",
            (Basis::X, true) => "u2^-1 u3",
            (Basis::X, false) => "u3^-1 u2",
            (Basis::E, true) => "u3^-1 u4",
            (Basis::E, false) => "u4^-1 u3",
        })
        .collect();
    RaagWord::parse(g, &text.join(" ")).expect("path4 generators")
}

/// `u2^-N (u2⁻¹u1 u3⁻¹u4)^N u2^N`.
pub fn written_form(n: usize) -> RaagWord {
    let g = path4();
    let core = RaagWord::parse(g.clone(), "u2^-1 u1 u3^-1 u4").expect("path4 generators");
    let u2 = RaagWord::parse(g, "u2").expect("path4 generators");
    let n = n as i64;
    u2.pow(-n).concat(&core.pow(n)).and_then(|w| w.concat(&u2.pow(n))).expect("same graph")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionRow {
    pub n: usize,
    pub free_length: usize,
    pub written_length: usize,
    pub geodesic_length: usize,
    /// `free_length / geodesic_length`.
    pub ratio: f64,
}

/// One row per `N` in `1..=nmax`.
pub fn distortion_table(nmax: usize) -> Vec<DistortionRow> {
    (1..=nmax)
        .map(|n| {
            let free_length = free_word(n).len();
            let geodesic_length = reduce(&w_n(n)).len();
            DistortionRow {
                n,
                free_length,
                written_length: written_form(n).len(),
                geodesic_length,
                ratio: free_length as f64 / geodesic_length as f64,
            }
        })
        .collect()
}

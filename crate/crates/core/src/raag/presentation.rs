//! Finite presentations of the kernel: triangle relators, or directed-cycle
//! relators `x(u1,u2)^n x(u2,u3)^n ... x(um,u1)^n` up to stated bounds.

use std::fmt;

use serde::Serialize;

use super::{KernelLetter, KernelWord, RaagError};
use crate::complex::Complex;

pub const DEFAULT_MAX_CYCLE: usize = 8;
pub const DEFAULT_MAX_N: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationMode {
    /// Two relators per triangle. Complete only for simply connected complexes,
    /// which the caller attests; nothing here checks it.
    Triangle { simply_connected: bool },
    /// Relators for simple directed cycles of length `3..=max_cycle` and
    /// exponents `±1..=±max_n`: a truncation of an infinite family.
    Cycles { max_cycle: Option<usize>, max_n: Option<u32> },
}

/// A relator as `(generator, power)` syllables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub syllables: Vec<(usize, i64)>,
}

impl Relator {
    pub fn to_kernel_word(&self) -> KernelWord {
        let letters = self
            .syllables
            .iter()
            .flat_map(|&(edge, p)| std::iter::repeat_n(KernelLetter { edge, exponent: p.signum() as i8 }, p.unsigned_abs() as usize))
            .collect();
        KernelWord { letters }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    /// `x(a,b)` per edge, `a < b`; generator `i` is edge `i` of the complex.
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
    pub mode: String,
    pub note: String,
}

impl Presentation {
    pub fn relator_text(&self, r: &Relator) -> String {
        r.syllables
            .iter()
            .map(|&(g, p)| if p == 1 { self.generators[g].clone() } else { format!("{}^{p}", self.generators[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn relator_texts(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.relator_text(r)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# mode: {}", self.mode)?;
        writeln!(f, "# {}", self.note)?;
        writeln!(f, "# {} generators, {} relators", self.generators.len(), self.relators.len())?;
        writeln!(f, "# generators: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", self.relator_text(r))?;
        }
        Ok(())
    }
}

/// Simple cycles of length `3..=max_len`, one per undirected cycle: each
/// starts at its smallest vertex and has a smaller second vertex than last.
fn simple_cycles(adjacency: &[Vec<usize>], max_len: usize) -> Vec<Vec<usize>> {
    fn extend(adj: &[Vec<usize>], max_len: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in &adj[last] {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if w > start && !on_path[w] && path.len() < max_len {
                on_path[w] = true;
                path.push(w);
                extend(adj, max_len, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; adjacency.len()];
    for s in 0..adjacency.len() {
        on_path[s] = true;
        extend(adjacency, max_len, &mut vec![s], &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

pub fn presentation(k: &Complex, mode: PresentationMode) -> Result<Presentation, RaagError> {
    if !k.is_connected() {
        return Err(RaagError::Disconnected);
    }
    let generators: Vec<String> = (0..k.edges().len())
        .map(|e| {
            let [a, b] = k.edge_names(e);
            format!("x({a},{b})")
        })
        .collect();
    let edge = |a: usize, b: usize| k.edge_id(a, b).expect("consecutive vertices span an edge");
    let signed = |a: usize, b: usize, n: i64| (edge(a, b), if a < b { n } else { -n });
    match mode {
        PresentationMode::Triangle { simply_connected } => {
            if !simply_connected {
                return Err(RaagError::NotAttested);
            }
            let mut relators = Vec::with_capacity(2 * k.triangles().len());
            for &[u, v, w] in k.triangles() {
                relators.push(Relator { syllables: vec![(edge(u, v), 1), (edge(v, w), 1), (edge(u, w), -1)] });
                relators.push(Relator { syllables: vec![(edge(v, w), 1), (edge(u, v), 1), (edge(u, w), -1)] });
            }
            Ok(Presentation {
                generators,
                relators,
                mode: "triangle".into(),
                note: "triangle relators; complete because the caller attests the complex is simply connected".into(),
            })
        }
        PresentationMode::Cycles { max_cycle, max_n } => {
            let max_cycle = max_cycle.ok_or_else(|| RaagError::MissingBounds("cycle mode needs a maximum cycle length".into()))?;
            let max_n = max_n.ok_or_else(|| RaagError::MissingBounds("cycle mode needs a maximum exponent".into()))?;
            if max_cycle < 3 || max_n == 0 {
                return Err(RaagError::MissingBounds("cycle length bound must be at least 3 and exponent bound at least 1".into()));
            }
            let mut relators = Vec::new();
            for cycle in simple_cycles(&k.adjacency(), max_cycle) {
                let m = cycle.len();
                for n in (1..=max_n as i64).flat_map(|n| [n, -n]) {
                    let syllables = (0..m).map(|i| signed(cycle[i], cycle[(i + 1) % m], n)).collect();
                    relators.push(Relator { syllables });
                }
            }
            Ok(Presentation {
                generators,
                relators,
                mode: "cycles".into(),
                note: format!(
                    "truncated relator family: simple directed cycles of length 3..={max_cycle}, exponents ±1..=±{max_n}"
                ),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::fixture;
    use crate::raag::{equal, reduce, CommutationGraph, RaagWord};

    fn k(name: &str) -> Complex {
        fixture(name).unwrap().simplicial().unwrap()
    }

    #[test]
    fn single_simplex() {
        let t = k("triangle");
        let p = presentation(&t, PresentationMode::Triangle { simply_connected: true }).unwrap();
        assert_eq!(p.generators, ["x(a,b)", "x(a,c)", "x(b,c)"]);
        assert_eq!(p.relator_texts(), ["x(a,b) x(b,c) x(a,c)^-1", "x(b,c) x(a,b) x(a,c)^-1"]);

        // Both relators die in the ambient group, and together they force
        // x(a,b) and x(b,c) to commute.
        let g = Arc::new(CommutationGraph::from_complex(&t));
        for r in &p.relators {
            assert!(reduce(&r.to_kernel_word().substitute(&t, g.clone()).unwrap()).is_empty());
        }
        let commutator = KernelWord::parse(&t, "x(a,b) x(b,c) x(a,b)^-1 x(b,c)^-1").unwrap();
        let image = commutator.substitute(&t, g.clone()).unwrap();
        assert!(equal(&image, &RaagWord::empty(g)).unwrap());
    }

    #[test]
    fn k0_counts() {
        let k0 = k("k0");
        let p = presentation(&k0, PresentationMode::Triangle { simply_connected: true }).unwrap();
        assert_eq!((p.generators.len(), p.relators.len()), (11, 12));
        assert_eq!(presentation(&k0, PresentationMode::Triangle { simply_connected: false }), Err(RaagError::NotAttested));
    }

    #[test]
    fn annulus_boundary_cycles() {
        let a = k("annulus");
        let p = presentation(&a, PresentationMode::Cycles { max_cycle: Some(8), max_n: Some(1) }).unwrap();
        let texts = p.relator_texts();
        assert!(texts.contains(&"x(i0,i1) x(i1,i2) x(i2,i3) x(i0,i3)^-1".to_string()), "{texts:?}");
        let outer = "x(o0,o1) x(o1,o2) x(o2,o3) x(o3,o4) x(o4,o5) x(o5,o6) x(o6,o7) x(o0,o7)^-1";
        assert!(texts.contains(&outer.to_string()));
        // every relator dies in the ambient group
        let g = Arc::new(CommutationGraph::from_complex(&a));
        for r in &p.relators {
            assert!(reduce(&r.to_kernel_word().substitute(&a, g.clone()).unwrap()).is_empty());
        }
    }

    #[test]
    fn cycle_enumeration_counts() {
        // K4 has 4 triangles and 3 four-cycles
        let k4: Vec<Vec<usize>> = (0..4).map(|i| (0..4).filter(|&j| j != i).collect()).collect();
        let cycles = simple_cycles(&k4, 8);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
        assert_eq!(simple_cycles(&k4, 3).len(), 4);
    }

    #[test]
    fn bounds_are_required() {
        let t = k("triangle");
        let missing = PresentationMode::Cycles { max_cycle: None, max_n: Some(2) };
        assert!(matches!(presentation(&t, missing), Err(RaagError::MissingBounds(_))));
        let p = presentation(&t, PresentationMode::Cycles { max_cycle: Some(8), max_n: Some(2) }).unwrap();
        assert_eq!(p.relators.len(), 4);
    }
}

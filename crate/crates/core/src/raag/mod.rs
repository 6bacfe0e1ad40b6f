//! Right-angled Artin groups: words, geodesic reduction and the word problem,
//! plus the kernel of the map sending every generator to 1.

mod distortion;
mod kernel;
mod presentation;

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Graph};

pub use distortion::{distortion_table, path4, w_n, written_form, DistortionRow};
pub use kernel::{kernel_rewrite, KernelLetter, KernelWord};
pub use presentation::{presentation, Presentation, PresentationMode, Relator, DEFAULT_MAX_CYCLE, DEFAULT_MAX_N};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RaagError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cannot parse letter `{0}`")]
    Malformed(String),
    #[error("words live over different commutation graphs")]
    MismatchedGraphs,
    #[error("word has exponent sum {0}, so it is not in the kernel")]
    NotInKernel(i64),
    #[error("complex is not connected")]
    Disconnected,
    #[error("invalid spanning tree: {0}")]
    BadTree(String),
    #[error("{0}")]
    MissingBounds(String),
    #[error("triangle relators present the kernel only for simply connected complexes; pass the attestation")]
    NotAttested,
    #[error("rewritten word does not represent the input")]
    RewriteMismatch,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

/// Defining graph of a right-angled Artin group: adjacent generators commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    names: Vec<String>,
    adjacent: Vec<Vec<bool>>,
}

impl CommutationGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.vertices().len();
        let mut adjacent = vec![vec![false; n]; n];
        for [a, b] in g.edges() {
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        Self { names: g.vertices().to_vec(), adjacent }
    }

    /// The 1-skeleton of a complex.
    pub fn from_complex(k: &Complex) -> Self {
        Self::from_graph(&k.skeleton())
    }

    /// Path `u1 - u2 - ... - un`.
    pub fn path(n: usize) -> Self {
        Self::from_graph(&Graph::path(&numbered(n).iter().map(String::as_str).collect::<Vec<_>>()))
    }

    /// Cycle `u1 - u2 - ... - un - u1`.
    pub fn cycle(n: usize) -> Self {
        Self::from_graph(&Graph::cycle(&numbered(n).iter().map(String::as_str).collect::<Vec<_>>()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn generator(&self, name: &str) -> Result<usize, RaagError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| RaagError::UnknownGenerator(name.to_string()))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent[a][b]
    }

    /// Equal or adjacent generators commute.
    pub fn commute(&self, a: usize, b: usize) -> bool {
        a == b || self.adjacent[a][b]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        assert!(exponent == 1 || exponent == -1, "letters have exponent ±1");
        Self { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Self { generator: self.generator, exponent: -self.exponent }
    }
}

/// A word in the generators of a right-angled Artin group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagWord {
    graph: Arc<CommutationGraph>,
    letters: Vec<Letter>,
}

/// Splits `name^k` into the name and the integer exponent (default 1).
pub(crate) fn split_power(token: &str) -> Result<(&str, i64), RaagError> {
    let malformed = || RaagError::Malformed(token.to_string());
    match token.split_once('^') {
        None if !token.is_empty() => Ok((token, 1)),
        None => Err(malformed()),
        Some((name, exp)) => {
            let exp: i64 = exp.parse().map_err(|_| malformed())?;
            if name.is_empty() || exp == 0 {
                return Err(malformed());
            }
            Ok((name, exp))
        }
    }
}

impl RaagWord {
    pub fn new(graph: Arc<CommutationGraph>, letters: Vec<Letter>) -> Result<Self, RaagError> {
        if let Some(l) = letters.iter().find(|l| l.generator >= graph.len()) {
            return Err(RaagError::UnknownGenerator(format!("#{}", l.generator)));
        }
        Ok(Self { graph, letters })
    }

    pub fn empty(graph: Arc<CommutationGraph>) -> Self {
        Self { graph, letters: Vec::new() }
    }

    /// Parses whitespace-separated letters such as `u2^-1 u1 u3^2`.
    ///
    /// `g^k` expands to `|k|` copies of `g` or `g⁻¹`; `1` and the empty string
    /// denote the identity.
    pub fn parse(graph: Arc<CommutationGraph>, text: &str) -> Result<Self, RaagError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace().filter(|t| *t != "1") {
            let (name, exp) = split_power(token)?;
            let g = graph.generator(name)?;
            let e = exp.signum() as i8;
            letters.extend(std::iter::repeat_n(Letter::new(g, e), exp.unsigned_abs() as usize));
        }
        Ok(Self { graph, letters })
    }

    pub fn graph(&self) -> &Arc<CommutationGraph> {
        &self.graph
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent as i64).sum()
    }

    pub fn inverse(&self) -> Self {
        Self { graph: self.graph.clone(), letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &RaagWord) -> Result<Self, RaagError> {
        self.same_graph(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { graph: self.graph.clone(), letters })
    }

    /// `self^n`, with negative `n` meaning powers of the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let letters = base.letters.iter().copied().cycle().take(base.len() * n.unsigned_abs() as usize).collect();
        Self { graph: self.graph.clone(), letters }
    }

    fn same_graph(&self, other: &RaagWord) -> Result<(), RaagError> {
        if Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph {
            Ok(())
        } else {
            Err(RaagError::MismatchedGraphs)
        }
    }
}

impl fmt::Display for RaagWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(l.generator))?;
            if l.exponent < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Geodesic representative: deletes every pair `g^ε … g^-ε` whose letters in
/// between all commute with `g`.
///
/// Letters are read left to right onto a stack that is kept reduced; a new
/// letter looks back past the letters it commutes with for an inverse to
/// cancel. This deletes, at each step, the leftmost pair that closes, which is
/// the innermost one around its right end. A word with no such pair is
/// geodesic, so the output length is the word length of the element.
pub fn reduce(w: &RaagWord) -> RaagWord {
    let g = &*w.graph;
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &letter in &w.letters {
        let mut cancel = None;
        for (i, prev) in stack.iter().enumerate().rev() {
            if prev.generator == letter.generator {
                if prev.exponent == -letter.exponent {
                    cancel = Some(i);
                    break;
                }
            } else if !g.commute(prev.generator, letter.generator) {
                break;
            }
        }
        match cancel {
            Some(i) => {
                stack.remove(i);
            }
            None => stack.push(letter),
        }
    }
    RaagWord { graph: w.graph.clone(), letters: stack }
}

/// Reduction that deletes a uniformly random deletable pair at each step.
///
/// Used to test that the reduced length does not depend on the order of deletions.
pub fn reduce_random_order<R: Rng + ?Sized>(w: &RaagWord, rng: &mut R) -> RaagWord {
    let g = &*w.graph;
    let mut letters = w.letters.clone();
    loop {
        let mut pairs = Vec::new();
        for i in 0..letters.len() {
            for j in i + 1..letters.len() {
                let (a, b) = (letters[i], letters[j]);
                if !g.commute(a.generator, b.generator) {
                    break;
                }
                if b.generator == a.generator {
                    if b.exponent == -a.exponent {
                        pairs.push((i, j));
                    }
                    break;
                }
            }
        }
        let Some(&(i, j)) = pairs.choose(rng) else { break };
        letters.remove(j);
        letters.remove(i);
    }
    RaagWord { graph: w.graph.clone(), letters }
}

/// Whether two words represent the same element.
pub fn equal(w1: &RaagWord, w2: &RaagWord) -> Result<bool, RaagError> {
    Ok(reduce(&w1.concat(&w2.inverse())?).is_empty())
}

/// Membership in the kernel of the map sending every generator to 1.
pub fn kernel_membership(w: &RaagWord) -> bool {
    w.exponent_sum() == 0
}

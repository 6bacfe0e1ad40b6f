//! Words in the generators `x(u,v) = u⁻¹v` of the kernel, and rewriting
//! kernel elements of the ambient group into them.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{equal, split_power, CommutationGraph, Letter, RaagError, RaagWord};
use crate::complex::Complex;

/// `x(a,b)^exponent` for the edge `{a, b}` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelLetter {
    pub edge: usize,
    pub exponent: i8,
}

impl KernelLetter {
    /// `x(source,target)^exponent`, normalized so the stored orientation has the smaller source.
    pub fn new(k: &Complex, source: usize, target: usize, exponent: i8) -> Result<Self, RaagError> {
        let edge = k.edge_id(source, target).ok_or_else(|| {
            RaagError::UnknownGenerator(format!("x({},{})", k.name(source), k.name(target)))
        })?;
        Ok(Self { edge, exponent: if source < target { exponent } else { -exponent } })
    }

    pub fn inverse(self) -> Self {
        Self { edge: self.edge, exponent: -self.exponent }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KernelWord {
    pub letters: Vec<KernelLetter>,
}

impl KernelWord {
    /// Parses letters like `x(u2,u1)^-1 x(u1,u3)`; powers expand.
    pub fn parse(k: &Complex, text: &str) -> Result<Self, RaagError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace().filter(|t| *t != "1") {
            let (name, exp) = split_power(token)?;
            let inner = name
                .strip_prefix("x(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| RaagError::Malformed(token.to_string()))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| RaagError::Malformed(token.to_string()))?;
            let letter = KernelLetter::new(k, k.vertex_id(a.trim())?, k.vertex_id(b.trim())?, exp.signum() as i8)?;
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Self { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Cancels adjacent inverse pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<KernelLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn to_text(&self, k: &Complex) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|l| {
                let [a, b] = k.edge_names(l.edge);
                if l.exponent > 0 { format!("x({a},{b})") } else { format!("x({a},{b})^-1") }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The image in the ambient group: `x(a,b) = a⁻¹ b`.
    pub fn substitute(&self, k: &Complex, graph: Arc<CommutationGraph>) -> Result<RaagWord, RaagError> {
        let mut letters = Vec::with_capacity(2 * self.letters.len());
        for l in &self.letters {
            let [a, b] = k.edge_names(l.edge).map(|n| graph.generator(n));
            let (a, b) = (a?, b?);
            if l.exponent > 0 {
                letters.extend([Letter::new(a, -1), Letter::new(b, 1)]);
            } else {
                letters.extend([Letter::new(b, -1), Letter::new(a, 1)]);
            }
        }
        RaagWord::new(graph, letters)
    }
}

/// Tree paths from the basepoint and the two conjugation maps built from them.
struct Rewriter<'k> {
    k: &'k Complex,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl<'k> Rewriter<'k> {
    /// Vertices `b = c0, c1, ..., cm = u` along the tree.
    fn path(&self, u: usize) -> Vec<usize> {
        let mut p = vec![u];
        let mut cur = u;
        while let Some(up) = self.parent[cur] {
            p.push(up);
            cur = up;
        }
        p.reverse();
        p
    }

    /// `b u⁻¹ = Π x(c_{i+1}, c_i)`.
    fn p_word(&self, u: usize) -> KernelWord {
        let p = self.path(u);
        KernelWord {
            letters: p.windows(2).map(|w| KernelLetter::new(self.k, w[1], w[0], 1).expect("tree edge")).collect(),
        }
    }

    /// `b⁻¹ u = Π x(c_i, c_{i+1})`.
    fn q_word(&self, u: usize) -> KernelWord {
        let p = self.path(u);
        KernelWord {
            letters: p.windows(2).map(|w| KernelLetter::new(self.k, w[0], w[1], 1).expect("tree edge")).collect(),
        }
    }

    /// Conjugation by `b` (forward) or `b⁻¹` (backward) on one letter.
    ///
    /// `x(u,v)` commutes with `u` and `v`, so `b x b⁻¹ = (b c⁻¹) x (b c⁻¹)⁻¹`
    /// for either endpoint `c`; the endpoint nearer the basepoint keeps words short.
    fn conjugate_letter(&self, l: KernelLetter, forward: bool) -> KernelWord {
        let [a, b] = self.k.edges()[l.edge];
        let c = if self.depth[a] <= self.depth[b] { a } else { b };
        let p = if forward { self.p_word(c) } else { self.q_word(c) };
        let mut letters = p.letters.clone();
        letters.push(l);
        letters.extend(p.inverse().letters);
        KernelWord { letters }
    }

    /// `b^h w b^-h`.
    fn conjugate(&self, w: &KernelWord, h: i64) -> KernelWord {
        let mut cur = w.clone();
        for _ in 0..h.unsigned_abs() {
            let letters = cur.letters.iter().flat_map(|&l| self.conjugate_letter(l, h > 0).letters).collect();
            cur = KernelWord { letters }.free_reduce();
        }
        cur
    }
}

fn bfs_tree(k: &Complex, root: usize, allowed: impl Fn(usize, usize) -> bool) -> (Vec<Option<usize>>, Vec<usize>, usize) {
    let n = k.vertex_count();
    let adjacency = k.adjacency();
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut reached = 1;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if depth[w] == usize::MAX && allowed(v, w) {
                depth[w] = depth[v] + 1;
                parent[w] = Some(v);
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    (parent, depth, reached)
}

/// Rewrites a kernel element of the ambient group as a word in the `x(u,v)`.
///
/// With `h` the exponent sum of the prefix before a letter, the word is the
/// product of `b^h g^ε b^-(h+ε)` over its letters, and each factor is a
/// conjugate by a power of `b` of `(b g⁻¹)⁻¹` or `b g⁻¹`, which the spanning
/// tree writes out. `tree` defaults to the breadth-first tree at `basepoint`.
/// The result is freely reduced and checked by substitution.
pub fn kernel_rewrite(
    w: &RaagWord,
    k: &Complex,
    basepoint: &str,
    tree: Option<&[[&str; 2]]>,
) -> Result<KernelWord, RaagError> {
    let ambient = CommutationGraph::from_complex(k);
    if **w.graph() != ambient {
        return Err(RaagError::MismatchedGraphs);
    }
    if w.exponent_sum() != 0 {
        return Err(RaagError::NotInKernel(w.exponent_sum()));
    }
    if !k.is_connected() {
        return Err(RaagError::Disconnected);
    }
    let root = k.vertex_id(basepoint)?;
    let (parent, depth, reached) = match tree {
        None => bfs_tree(k, root, |_, _| true),
        Some(edges) => {
            let mut ids = Vec::with_capacity(edges.len());
            for [a, b] in edges {
                let (a, b) = (k.vertex_id(a)?, k.vertex_id(b)?);
                let e = k.edge_id(a, b).ok_or_else(|| RaagError::BadTree(format!("{} {} is not an edge", k.name(a), k.name(b))))?;
                ids.push(e);
            }
            ids.sort_unstable();
            ids.dedup();
            if ids.len() + 1 != k.vertex_count() {
                return Err(RaagError::BadTree(format!("{} edges for {} vertices", ids.len(), k.vertex_count())));
            }
            bfs_tree(k, root, |a, b| ids.binary_search(&k.edge_id(a, b).unwrap()).is_ok())
        }
    };
    if reached != k.vertex_count() {
        return Err(RaagError::BadTree("does not span".into()));
    }
    let rw = Rewriter { k, parent, depth };
    let name_to_vertex: Vec<usize> =
        ambient.names().iter().map(|n| k.vertex_id(n)).collect::<Result<_, _>>()?;

    let mut letters = Vec::new();
    let mut height = 0i64;
    for l in w.letters() {
        let g = name_to_vertex[l.generator];
        let factor = if l.exponent > 0 {
            rw.conjugate(&rw.p_word(g).inverse(), height)
        } else {
            rw.conjugate(&rw.p_word(g), height - 1)
        };
        letters.extend(factor.letters);
        height += l.exponent as i64;
    }
    let out = KernelWord { letters }.free_reduce();
    if !equal(w, &out.substitute(k, w.graph().clone())?)? {
        return Err(RaagError::RewriteMismatch);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixture;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k(name: &str) -> Complex {
        fixture(name).unwrap().simplicial().unwrap()
    }

    fn ambient(k: &Complex) -> Arc<CommutationGraph> {
        Arc::new(CommutationGraph::from_complex(k))
    }

    #[test]
    fn single_letters() {
        let p = k("path4");
        let g = ambient(&p);
        let w = RaagWord::parse(g.clone(), "u2^-1 u1").unwrap();
        let x = kernel_rewrite(&w, &p, "u1", None).unwrap();
        assert_eq!(x, KernelWord::parse(&p, "x(u2,u1)").unwrap());
        assert_eq!(x.to_text(&p), "x(u1,u2)^-1");

        let w = RaagWord::parse(g, "u1 u2^-1").unwrap();
        assert_eq!(kernel_rewrite(&w, &p, "u1", None).unwrap(), KernelWord::parse(&p, "x(u2,u1)").unwrap());
    }

    #[test]
    fn errors() {
        let p = k("path4");
        let g = ambient(&p);
        let w = RaagWord::parse(g.clone(), "u1").unwrap();
        assert_eq!(kernel_rewrite(&w, &p, "u1", None), Err(RaagError::NotInKernel(1)));
        let w = RaagWord::parse(g, "u1 u2^-1").unwrap();
        assert!(matches!(kernel_rewrite(&w, &p, "u1", Some(&[["u1", "u2"]])), Err(RaagError::BadTree(_))));
        assert!(matches!(kernel_rewrite(&w, &p, "u1", Some(&[["u1", "u3"], ["u1", "u2"], ["u3", "u4"]])), Err(RaagError::BadTree(_))));
        let foreign = RaagWord::parse(Arc::new(CommutationGraph::cycle(4)), "u1 u2^-1").unwrap();
        assert_eq!(kernel_rewrite(&foreign, &p, "u1", None), Err(RaagError::MismatchedGraphs));
    }

    #[test]
    fn random_round_trips_with_other_trees() {
        let k0 = k("k0");
        let g = ambient(&k0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tree: &[[&str; 2]] = &[["u1", "u2"], ["u2", "u3"], ["u3", "u4"], ["u4", "p"], ["u4", "q"]];
        for _ in 0..50 {
            let half = rng.gen_range(0..=5);
            let mut letters: Vec<Letter> = (0..half).map(|_| Letter::new(rng.gen_range(0..g.len()), 1)).collect();
            letters.extend((0..half).map(|_| Letter::new(rng.gen_range(0..g.len()), -1)));
            for i in (1..letters.len()).rev() {
                letters.swap(i, rng.gen_range(0..=i));
            }
            let w = RaagWord::new(g.clone(), letters).unwrap();
            kernel_rewrite(&w, &k0, "p", None).unwrap();
            kernel_rewrite(&w, &k0, "u1", Some(tree)).unwrap();
        }
    }

    #[test]
    fn normalization_and_free_reduction() {
        let p = k("path4");
        let w = KernelWord::parse(&p, "x(u2,u1) x(u1,u2) x(u3,u4)^2").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.free_reduce().to_text(&p), "x(u3,u4) x(u3,u4)");
        assert!(KernelWord::parse(&p, "x(u1,u3)").is_err());
    }
}

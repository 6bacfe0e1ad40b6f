//! Oracles shared by the integration tests. None of them call into the
//! reduction code they are used to check.
#![allow(dead_code)]

use std::collections::HashMap;

use flagcat::complex::Complex;
use flagcat::metric::PeMetric;
use flagcat::raag::{CommutationGraph, Letter};
use rand::Rng;

/// Exact group elements of a right-angled Artin group, via its embedding in a
/// right-angled Coxeter group on `V x {0,1}` (`v ↦ s(v,0) s(v,1)`) and the
/// dual Tits representation, which acts freely on the open fundamental chamber.
pub struct CoxeterOracle {
    n: usize,
    /// Bilinear form on the `2n` Coxeter generators: 1, 0 (commute) or -1.
    form: Vec<Vec<i64>>,
}

pub type Element = Vec<i64>;

impl CoxeterOracle {
    pub fn new(g: &CommutationGraph) -> Self {
        let n = g.len();
        let idx = |v: usize, layer: usize| 2 * v + layer;
        let mut commute = vec![vec![false; 2 * n]; 2 * n];
        for v in 0..n {
            for w in 0..n {
                if v == w {
                    continue;
                }
                commute[idx(v, 0)][idx(w, 0)] = g.commute(v, w);
                commute[idx(v, 1)][idx(w, 1)] = true;
                commute[idx(v, 0)][idx(w, 1)] = true;
                commute[idx(w, 1)][idx(v, 0)] = true;
            }
        }
        let form = (0..2 * n)
            .map(|s| (0..2 * n).map(|t| if s == t { 1 } else if commute[s][t] { 0 } else { -1 }).collect())
            .collect();
        CoxeterOracle { n, form }
    }

    pub fn identity(&self) -> Element {
        vec![1; 2 * self.n]
    }

    fn reflect(&self, phi: &mut Element, s: usize) {
        let ps = phi[s];
        for (t, p) in phi.iter_mut().enumerate() {
            *p -= 2 * self.form[s][t] * ps;
        }
    }

    /// `phi · l` for one letter of the Artin group.
    pub fn act(&self, phi: &mut Element, l: Letter) {
        let (first, second) = if l.exponent > 0 { (0, 1) } else { (1, 0) };
        self.reflect(phi, 2 * l.generator + first);
        self.reflect(phi, 2 * l.generator + second);
    }

    pub fn element(&self, letters: &[Letter]) -> Element {
        let mut phi = self.identity();
        for &l in letters {
            self.act(&mut phi, l);
        }
        phi
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n).flat_map(|g| [Letter::new(g, 1), Letter::new(g, -1)]).collect()
    }

    /// Word length of every element within `radius` of the identity.
    pub fn ball(&self, radius: usize) -> HashMap<Element, usize> {
        let mut dist = HashMap::from([(self.identity(), 0)]);
        let mut frontier = vec![self.identity()];
        let letters = self.letters();
        for r in 1..=radius {
            let mut next = Vec::new();
            for e in &frontier {
                for &l in &letters {
                    let mut f = e.clone();
                    self.act(&mut f, l);
                    dist.entry(f.clone()).or_insert_with(|| {
                        next.push(f);
                        r
                    });
                }
            }
            frontier = next;
        }
        dist
    }
}

/// Lengths in `scale · [1, 1 + spread)` with `spread < 1`: every triangle is non-degenerate.
pub fn narrow_metric<R: Rng>(k: &Complex, rng: &mut R) -> PeMetric {
    let spread = rng.gen_range(0.0..0.95);
    let scale = rng.gen_range(0.2..5.0);
    let lengths = (0..k.edges().len()).map(|_| scale * (1.0 + rng.gen_range(0.0..=spread))).collect();
    PeMetric::new(k, lengths).expect("narrow lengths satisfy every triangle inequality")
}

/// Distances between random points of `R^4`, resampled while some triangle
/// is within 0.1% of degenerate.
pub fn wide_metric<R: Rng>(k: &Complex, rng: &mut R) -> PeMetric {
    loop {
        let pts: Vec<[f64; 4]> = (0..k.vertex_count()).map(|_| [(); 4].map(|_| rng.gen_range(-1.0..1.0))).collect();
        let dist = |a: usize, b: usize| pts[a].iter().zip(&pts[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
        let lengths: Vec<f64> = k.edges().iter().map(|&[a, b]| dist(a, b)).collect();
        let Ok(m) = PeMetric::new(k, lengths) else { continue };
        let fat = (0..k.triangles().len()).all(|t| {
            let [a, b, c] = m.triangle_sides(k, t);
            a + b > c * 1.001 && b + c > a * 1.001 && a + c > b * 1.001
        });
        if fat {
            return m;
        }
    }
}

/// Minimum over all simple cycles by exhaustive search; `None` for forests.
pub fn brute_force_girth(n: usize, edges: &[(usize, usize, f64)]) -> Option<f64> {
    let mut w = vec![vec![None; n]; n];
    for &(u, v, x) in edges {
        w[u][v] = Some(x);
        w[v][u] = Some(x);
    }
    fn extend(
        w: &[Vec<Option<f64>>],
        start: usize,
        last: usize,
        len: usize,
        total: f64,
        on: &mut [bool],
        best: &mut Option<f64>,
    ) {
        for next in 0..w.len() {
            let Some(x) = w[last][next] else { continue };
            if next == start && len >= 3 {
                let t = total + x;
                if best.is_none_or(|b| t < b) {
                    *best = Some(t);
                }
            } else if next > start && !on[next] {
                on[next] = true;
                extend(w, start, next, len + 1, total + x, on, best);
                on[next] = false;
            }
        }
    }
    let mut best = None;
    let mut on = vec![false; n];
    for s in 0..n {
        on[s] = true;
        extend(&w, s, s, 1, 0.0, &mut on, &mut best);
        on[s] = false;
    }
    best
}

/// Ball of elements with one geodesic word each, for meet-in-the-middle distances.
pub struct WordBall<'a> {
    oracle: &'a CoxeterOracle,
    radius: usize,
    words: HashMap<Element, Vec<Letter>>,
}

impl<'a> WordBall<'a> {
    pub fn new(oracle: &'a CoxeterOracle, radius: usize) -> Self {
        let mut words = HashMap::from([(oracle.identity(), Vec::new())]);
        let mut frontier = vec![(oracle.identity(), Vec::new())];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (e, w) in &frontier {
                for l in oracle.letters() {
                    let mut f = e.clone();
                    oracle.act(&mut f, l);
                    if !words.contains_key(&f) {
                        let mut w2: Vec<Letter> = w.clone();
                        w2.push(l);
                        words.insert(f.clone(), w2.clone());
                        next.push((f, w2));
                    }
                }
            }
            frontier = next;
        }
        WordBall { oracle, radius, words }
    }

    /// Word length of `letters`, if at most twice the radius.
    pub fn distance(&self, letters: &[Letter]) -> Option<usize> {
        let mut best = None;
        for h in self.words.values() {
            let mut probe: Vec<Letter> = h.iter().rev().map(|l| l.inverse()).collect();
            probe.extend_from_slice(letters);
            if let Some(rest) = self.words.get(&self.oracle.element(&probe)) {
                let d = h.len() + rest.len();
                if best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
        }
        best.filter(|&d| d <= 2 * self.radius)
    }
}

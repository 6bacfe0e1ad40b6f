//! The max-min objective over log edge lengths and its active-circuit subgradient.

use std::f64::consts::TAU;

use super::SearchMode;
use crate::complex::{Complex, OrientedEdge};
use crate::metric::{corner_angle_gradient, corner_angles, MetricError, PeMetric};
use crate::weighted::{girth, WeightedGraph};

/// A graph whose girth is being pushed up, with each edge tagged by the
/// `(triangle, corner)` whose angle weights it.
struct Target {
    vertex: Option<usize>,
    labels: Vec<String>,
    edges: Vec<(usize, usize, (usize, usize))>,
}

/// Precomputed structure shared by every evaluation on one complex.
pub(crate) struct Problem<'a> {
    pub(crate) k: &'a Complex,
    /// Edge ids of the sides `[|bc|, |ac|, |ab|]` of each triangle `abc`.
    sides: Vec<[usize; 3]>,
    targets: Vec<Target>,
}

#[derive(Debug, Clone)]
pub(crate) struct Evaluation {
    /// Girth minus `2π`; `+∞` when every target is a forest.
    pub raw: f64,
    pub penalty: f64,
    pub min_margin: f64,
    pub grad_raw: Vec<f64>,
    pub grad_penalty: Vec<f64>,
    /// Target index and the target-graph edges of the shortest circuit.
    pub active: Option<(usize, Vec<usize>)>,
}

impl<'a> Problem<'a> {
    pub(crate) fn new(k: &'a Complex, mode: SearchMode) -> Self {
        let sides = k
            .triangles()
            .iter()
            .map(|&[a, b, c]| {
                let e = |x, y| k.edge_id(x, y).expect("triangle sides are edges");
                [e(b, c), e(a, c), e(a, b)]
            })
            .collect();
        let targets = match mode {
            SearchMode::Global => vec![global_target(k)],
            SearchMode::Links => (0..k.vertex_count())
                .filter(|&v| !k.link_graph(k.name(v)).expect("vertex exists").is_forest())
                .map(|v| link_target(k, v))
                .collect(),
        };
        Self { k, sides, targets }
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.k.edges().len()
    }

    pub(crate) fn target_vertex(&self, target: usize) -> Option<&str> {
        self.targets[target].vertex.map(|v| self.k.name(v))
    }

    /// Vertex labels of the target graph around a circuit given by its edges.
    pub(crate) fn circuit_labels(&self, target: usize, edges: &[usize]) -> Vec<String> {
        let t = &self.targets[target];
        let mut order = Vec::new();
        let mut remaining: Vec<(usize, usize)> = edges
            .iter()
            .map(|&e| (t.edges[e].0, t.edges[e].1))
            .collect();
        if let Some((a, b)) = remaining.pop() {
            order.push(a);
            let mut cur = b;
            while let Some(i) = remaining.iter().position(|&(x, y)| x == cur || y == cur) {
                order.push(cur);
                let (x, y) = remaining.swap_remove(i);
                cur = if x == cur { y } else { x };
            }
        }
        order.into_iter().map(|v| t.labels[v].clone()).collect()
    }

    /// Objective, penalty and their gradients at `lengths`; `None` when a
    /// triangle is degenerate.
    pub(crate) fn evaluate(&self, lengths: &[f64], margin_floor: f64) -> Option<Evaluation> {
        let metric = PeMetric::new(self.k, lengths.to_vec()).ok()?;
        let angles = corner_angles(self.k, &metric).ok()?.angles;
        let n = lengths.len();

        let mut raw = f64::INFINITY;
        let mut active: Option<(usize, Vec<usize>)> = None;
        for (ti, target) in self.targets.iter().enumerate() {
            let g = weighted(target, &angles);
            if let Some(c) = girth(&g) {
                let slack = c.length - TAU;
                if slack < raw {
                    raw = slack;
                    let m = c.vertices.len();
                    let tagged = (0..m)
                        .map(|i| {
                            let (a, b) = (c.vertices[i], c.vertices[(i + 1) % m]);
                            g.neighbours(a).iter().find(|&&(y, _)| y == b).expect("circuit edge").1
                        })
                        .collect();
                    active = Some((ti, tagged));
                }
            }
        }

        let mut grad_raw = vec![0.0; n];
        if let Some((ti, circuit)) = &active {
            for &e in circuit {
                let (t, corner) = self.targets[*ti].edges[e].2;
                let [s0, s1, s2] = self.sides[t];
                // (adjacent, adjacent, opposite) sides at each corner
                let (p, q, o) = match corner {
                    0 => (s1, s2, s0),
                    1 => (s0, s2, s1),
                    _ => (s0, s1, s2),
                };
                let g = corner_angle_gradient(lengths[p], lengths[q], lengths[o]).ok()?;
                grad_raw[p] += g[0];
                grad_raw[q] += g[1];
                grad_raw[o] += g[2];
            }
        }

        let mut penalty = 0.0;
        let mut min_margin = f64::INFINITY;
        let mut grad_penalty = vec![0.0; n];
        for side_ids in &self.sides {
            let s = side_ids.map(|e| lengths[e]);
            let perimeter = s[0] + s[1] + s[2];
            for i in 0..3 {
                let margin = 1.0 - 2.0 * s[i] / perimeter;
                min_margin = min_margin.min(margin);
                let hinge = margin_floor - margin;
                if hinge <= 0.0 {
                    continue;
                }
                penalty += hinge * hinge;
                for j in 0..3 {
                    let mut dm = 2.0 * s[i] / (perimeter * perimeter);
                    if i == j {
                        dm -= 2.0 / perimeter;
                    }
                    grad_penalty[side_ids[j]] += -2.0 * hinge * dm * s[j];
                }
            }
        }
        Some(Evaluation { raw, penalty, min_margin, grad_raw, grad_penalty, active })
    }
}

fn weighted(target: &Target, angles: &[[f64; 3]]) -> WeightedGraph {
    let mut g = WeightedGraph::with_vertices(target.labels.iter().cloned()).expect("distinct labels");
    for &(a, b, (t, c)) in &target.edges {
        g.add_edge(a, b, angles[t][c]).expect("valid angle");
    }
    g
}

fn global_target(k: &Complex) -> Target {
    let oriented = k.oriented_edges();
    let id = |s: usize, t: usize| oriented.binary_search(&OrientedEdge::new(s, t)).expect("oriented edge");
    let mut edges = Vec::new();
    for (t, tri) in k.triangles().iter().enumerate() {
        for (i, &w) in tri.iter().enumerate() {
            let mut others = tri.iter().copied().filter(|&x| x != w);
            let (x, y) = (others.next().unwrap(), others.next().unwrap());
            edges.push((id(w, x), id(w, y), (t, i)));
            edges.push((id(x, w), id(y, w), (t, i)));
        }
    }
    Target { vertex: None, labels: oriented.iter().map(|&e| k.oriented_edge_label(e)).collect(), edges }
}

fn link_target(k: &Complex, v: usize) -> Target {
    let neighbours = &k.adjacency()[v];
    let slot = |w: usize| neighbours.binary_search(&w).expect("corner is a neighbour");
    let edges = k
        .link_triangles(v)
        .into_iter()
        .map(|(t, a, b)| {
            let corner = k.triangles()[t].iter().position(|&w| w == v).unwrap();
            (slot(a), slot(b), (t, corner))
        })
        .collect();
    Target { vertex: Some(v), labels: neighbours.iter().map(|&w| k.name(w).to_string()).collect(), edges }
}

/// Girth minus `2π` of the mode's target graph(s), through the metric module.
///
/// `+∞` when nothing has a cycle.
pub fn objective(k: &Complex, m: &PeMetric, mode: SearchMode) -> Result<f64, MetricError> {
    use crate::metric::{check_angle_graph, check_link_condition};
    let slack = |v: &crate::metric::Verdict| v.slack.unwrap_or(f64::INFINITY);
    Ok(match mode {
        SearchMode::Global => slack(&check_angle_graph(k, m, 0.0)?),
        SearchMode::Links => {
            check_link_condition(k, m, 0.0)?.values().map(slack).fold(f64::INFINITY, f64::min)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixture;

    #[test]
    fn evaluation_matches_metric_module() {
        let k = fixture("k0").unwrap().simplicial().unwrap();
        let lengths: Vec<f64> = (0..k.edges().len()).map(|i| 1.0 + 0.07 * i as f64).collect();
        let m = PeMetric::new(&k, lengths.clone()).unwrap();
        for mode in [SearchMode::Global, SearchMode::Links] {
            let e = Problem::new(&k, mode).evaluate(&lengths, 0.01).unwrap();
            assert_eq!(e.raw, objective(&k, &m, mode).unwrap());
        }
    }

    #[test]
    fn subgradient_matches_finite_differences() {
        let k = fixture("k0").unwrap().simplicial().unwrap();
        let lengths: Vec<f64> = (0..k.edges().len()).map(|i| 1.0 + 0.05 * ((i * 7) % 5) as f64).collect();
        for mode in [SearchMode::Global, SearchMode::Links] {
            let p = Problem::new(&k, mode);
            let base = p.evaluate(&lengths, 0.3).unwrap();
            let h: f64 = 1e-7;
            for e in 0..lengths.len() {
                let mut up = lengths.clone();
                up[e] *= h.exp();
                let mut down = lengths.clone();
                down[e] *= (-h).exp();
                let (u, d) = (p.evaluate(&up, 0.3).unwrap(), p.evaluate(&down, 0.3).unwrap());
                // generic point: the active circuit does not switch under tiny moves
                let fd = (u.raw - d.raw) / (2.0 * h);
                assert!((fd - base.grad_raw[e]).abs() < 1e-5, "{mode:?} edge {e}: {fd} vs {}", base.grad_raw[e]);
                let fd = (u.penalty - d.penalty) / (2.0 * h);
                assert!((fd - base.grad_penalty[e]).abs() < 1e-5, "penalty edge {e}: {fd} vs {}", base.grad_penalty[e]);
            }
        }
    }

    #[test]
    fn forests_are_vacuous() {
        let k = fixture("triangle").unwrap().simplicial().unwrap();
        let e = Problem::new(&k, SearchMode::Links).evaluate(&[1.0, 1.0, 1.0], 0.01).unwrap();
        assert_eq!(e.raw, f64::INFINITY);
        assert!(e.active.is_none());
    }
}

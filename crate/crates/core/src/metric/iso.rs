use crate::weighted::WeightedGraph;

/// Finds a vertex bijection `f` with `w(f(a), f(b)) ≈ w(a, b)` (within `tol`)
/// for every edge and no extra edges, by backtracking.
///
/// Candidates are filtered by degree and by the sorted list of incident
/// weights; vertices are matched in breadth-first order so each new vertex is
/// constrained by already matched neighbours. Meant for the small graphs that
/// occur as links.
pub fn weighted_isomorphism(g: &WeightedGraph, h: &WeightedGraph, tol: f64) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let signature = |graph: &WeightedGraph, v: usize| {
        let mut ws: Vec<f64> = graph.neighbours(v).iter().map(|&(_, e)| graph.edges()[e].2).collect();
        ws.sort_by(f64::total_cmp);
        ws
    };
    let g_sig: Vec<Vec<f64>> = (0..n).map(|v| signature(g, v)).collect();
    let h_sig: Vec<Vec<f64>> = (0..n).map(|v| signature(h, v)).collect();
    let compatible = |a: &[f64], b: &[f64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol);
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|v| (0..n).filter(|&w| compatible(&g_sig[v], &h_sig[w])).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }

    // Breadth-first order over each component, most constrained root first.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let root = (0..n).filter(|&v| !placed[v]).min_by_key(|&v| (candidates[v].len(), v)).unwrap();
        placed[root] = true;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let v = order[i];
            for &(w, _) in g.neighbours(v) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, tol, &order, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &WeightedGraph,
    h: &WeightedGraph,
    tol: f64,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else { return true };
    'candidates: for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let mut mapped_neighbours = 0;
        for &(x, e) in g.neighbours(v) {
            if map[x] == usize::MAX {
                continue;
            }
            mapped_neighbours += 1;
            match h.weight(w, map[x]) {
                Some(&hw) if (hw - g.edges()[e].2).abs() <= tol => {}
                _ => continue 'candidates,
            }
        }
        let image_neighbours = h.neighbours(w).iter().filter(|&&(y, _)| used[y]).count();
        if image_neighbours != mapped_neighbours {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, tol, order, candidates, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedGraph {
        let mut g = WeightedGraph::with_vertices((0..n).map(|i| format!("v{i}"))).unwrap();
        for &(a, b, w) in edges {
            g.add_edge(a, b, w).unwrap();
        }
        g
    }

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let g = graph(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0), (3, 0, 4.0)]);
        let h = graph(4, &[(2, 0, 1.0), (0, 3, 2.0), (3, 1, 3.0), (1, 2, 4.0)]);
        let map = weighted_isomorphism(&g, &h, 1e-9).unwrap();
        for &(a, b, w) in g.edges() {
            assert_eq!(h.weight(map[a], map[b]), Some(&w));
        }
    }

    #[test]
    fn weights_must_match() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]);
        let h = graph(3, &[(0, 1, 1.0), (1, 2, 2.1)]);
        assert!(weighted_isomorphism(&g, &h, 1e-9).is_none());
        assert!(weighted_isomorphism(&g, &h, 0.2).is_some());
    }

    #[test]
    fn same_degrees_different_shape() {
        // Hexagon versus two triangles.
        let hex = graph(6, &(0..6).map(|i| (i, (i + 1) % 6, 1.0)).collect::<Vec<_>>());
        let two = graph(6, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (3, 4, 1.0), (4, 5, 1.0), (5, 3, 1.0)]);
        assert!(weighted_isomorphism(&hex, &two, 1e-9).is_none());
    }
}

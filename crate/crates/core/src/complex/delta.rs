use std::collections::BTreeSet;

use super::{Complex, ComplexError};

/// A 2-dimensional Δ-complex: cells whose faces may be identified.
///
/// Edge `e` runs from `edges[e][0]` to `edges[e][1]` (possibly the same
/// vertex). Triangle `t` with corners `[v0, v1, v2]` lists its faces as
/// `[d0, d1, d2]` where `d0 = [v1, v2]`, `d1 = [v0, v2]` and `d2 = [v0, v1]`,
/// each traversed from the lower to the higher corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl DeltaComplex {
    pub fn new(vertex_count: usize, edges: Vec<[usize; 2]>, triangles: Vec<[usize; 3]>) -> Result<Self, ComplexError> {
        for (e, ends) in edges.iter().enumerate() {
            if ends.iter().any(|&v| v >= vertex_count) {
                return Err(ComplexError::InvalidDelta(format!("edge {e} references a missing vertex")));
            }
        }
        let complex = Self { vertex_count, edges, triangles };
        for (t, faces) in complex.triangles.iter().enumerate() {
            if faces.iter().any(|&e| e >= complex.edges.len()) {
                return Err(ComplexError::InvalidDelta(format!("triangle {t} references a missing edge")));
            }
            let [d0, d1, d2] = faces.map(|e| complex.edges[e]);
            if d2[0] != d1[0] || d2[1] != d0[0] || d1[1] != d0[1] {
                return Err(ComplexError::InvalidDelta(format!("faces of triangle {t} do not meet at common corners")));
            }
        }
        Ok(complex)
    }

    /// The simplicial complex viewed as a Δ-complex, corners ordered by vertex index.
    pub fn from_simplicial(k: &Complex) -> Self {
        let triangles = k
            .triangles()
            .iter()
            .map(|&[a, b, c]| {
                let e = |x, y| k.edge_id(x, y).expect("faces are edges");
                [e(b, c), e(a, c), e(a, b)]
            })
            .collect();
        Self { vertex_count: k.vertex_count(), edges: k.edges().to_vec(), triangles }
    }

    /// Zeeman's dunce hat: one triangle whose three edges, oriented from the
    /// lower corner to the higher, are all identified.
    pub fn dunce_hat() -> Self {
        Self { vertex_count: 1, edges: vec![[0, 0]], triangles: vec![[0, 0, 0]] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn cell_count(&self) -> usize {
        self.vertex_count + self.edges.len() + self.triangles.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Corners `[v0, v1, v2]` of triangle `t`.
    pub fn corners(&self, t: usize) -> [usize; 3] {
        let [d0, _, d2] = self.triangles[t];
        [self.edges[d2][0], self.edges[d2][1], self.edges[d0][1]]
    }

    /// Barycentric subdivision.
    ///
    /// New vertices are the barycentres of vertices, then edges, then
    /// triangles. New simplices are chains of incidences in the characteristic
    /// simplices, so an edge whose ends coincide still yields two distinct
    /// half-edges.
    pub fn barycentric_subdivision(&self) -> Self {
        let nv = self.vertex_count;
        let ne = self.edges.len();
        let nt = self.triangles.len();
        let edge_centre = |e: usize| nv + e;
        let tri_centre = |t: usize| nv + ne + t;

        let mut edges = Vec::with_capacity(2 * ne + 6 * nt);
        // Half-edge (e, end): vertex `edges[e][end]` to the centre of e.
        for (e, ends) in self.edges.iter().enumerate() {
            for &v in ends {
                edges.push([v, edge_centre(e)]);
            }
        }
        let half_edge = |e: usize, end: usize| 2 * e + end;
        // Spoke from the centre of face j of t to the centre of t.
        let face_spoke_base = edges.len();
        for (t, faces) in self.triangles.iter().enumerate() {
            for &e in faces {
                edges.push([edge_centre(e), tri_centre(t)]);
            }
        }
        let face_spoke = |t: usize, j: usize| face_spoke_base + 3 * t + j;
        // Spoke from corner i of t to the centre of t.
        let corner_spoke_base = edges.len();
        for t in 0..nt {
            for v in self.corners(t) {
                edges.push([v, tri_centre(t)]);
            }
        }
        let corner_spoke = |t: usize, i: usize| corner_spoke_base + 3 * t + i;

        let mut triangles = Vec::with_capacity(6 * nt);
        for (t, faces) in self.triangles.iter().enumerate() {
            for (j, &e) in faces.iter().enumerate() {
                // Corners of face j, in increasing order, are the two indices other than j.
                let face_corners: Vec<usize> = (0..3).filter(|&i| i != j).collect();
                for (end, &i) in face_corners.iter().enumerate() {
                    // Simplex [corner i, centre of face j, centre of t].
                    triangles.push([face_spoke(t, j), corner_spoke(t, i), half_edge(e, end)]);
                }
            }
        }
        Self { vertex_count: nv + ne + nt, edges, triangles }
    }

    /// Converts to a simplicial complex when every cell is determined by its
    /// vertex set. Vertices are named `v0000`, `v0001`, ...
    pub fn to_simplicial(&self) -> Result<Complex, ComplexError> {
        let width = self.vertex_count.max(1).to_string().len();
        let names: Vec<String> = (0..self.vertex_count).map(|i| format!("v{i:0width$}")).collect();
        let mut edge_sets = BTreeSet::new();
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            if a == b {
                return Err(ComplexError::NotSimplicial(format!("edge {e} is a loop")));
            }
            if !edge_sets.insert([a.min(b), a.max(b)]) {
                return Err(ComplexError::NotSimplicial(format!("edge {e} is parallel to another edge")));
            }
        }
        let mut tri_sets = BTreeSet::new();
        for t in 0..self.triangles.len() {
            let mut c = self.corners(t);
            c.sort_unstable();
            if c[0] == c[1] || c[1] == c[2] {
                return Err(ComplexError::NotSimplicial(format!("triangle {t} has a repeated corner")));
            }
            if !tri_sets.insert(c) {
                return Err(ComplexError::NotSimplicial(format!("triangle {t} shares its corners with another")));
            }
        }
        let edges: Vec<[&str; 2]> = edge_sets.iter().map(|&[a, b]| [names[a].as_str(), names[b].as_str()]).collect();
        let tris: Vec<[&str; 3]> =
            tri_sets.iter().map(|&[a, b, c]| [names[a].as_str(), names[b].as_str(), names[c].as_str()]).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let complex = Complex::new(&name_refs, &edges, &tris)?;
        if complex.edges().len() != self.edges.len() {
            return Err(ComplexError::NotSimplicial("a triangle face is missing from the edge list".into()));
        }
        Ok(complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inconsistent_faces() {
        // Faces that do not share corners.
        let err = DeltaComplex::new(3, vec![[0, 1], [1, 2], [0, 2]], vec![[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, ComplexError::InvalidDelta(_)));
        assert!(DeltaComplex::new(3, vec![[0, 1], [1, 2], [0, 2]], vec![[1, 2, 0]]).is_ok());
        assert!(DeltaComplex::new(1, vec![[0, 3]], vec![]).is_err());
    }

    #[test]
    fn subdivided_simplex_counts() {
        let k = Complex::from_triangles(&[["a", "b", "c"]]).unwrap();
        let sd = DeltaComplex::from_simplicial(&k).barycentric_subdivision();
        assert_eq!((sd.vertex_count(), sd.edges().len(), sd.triangles().len()), (7, 12, 6));
        let simplicial = sd.to_simplicial().unwrap();
        assert!(simplicial.check_flag().is_flag);
    }

    #[test]
    fn dunce_hat_needs_two_subdivisions() {
        let d = DeltaComplex::dunce_hat();
        assert_eq!(d.euler_characteristic(), 1);
        let once = d.barycentric_subdivision();
        assert!(once.to_simplicial().is_err());
        let twice = once.barycentric_subdivision();
        let k = twice.to_simplicial().unwrap();
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn subdivision_counts_follow_cells() {
        let d = DeltaComplex::dunce_hat();
        let mut cur = d;
        for _ in 0..3 {
            let next = cur.barycentric_subdivision();
            assert_eq!(next.vertex_count(), cur.cell_count());
            assert_eq!(next.edges().len(), 2 * cur.edges().len() + 6 * cur.triangles().len());
            assert_eq!(next.triangles().len(), 6 * cur.triangles().len());
            assert_eq!(next.euler_characteristic(), cur.euler_characteristic());
            cur = next;
        }
    }
}

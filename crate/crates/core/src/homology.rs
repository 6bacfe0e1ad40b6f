//! Integral simplicial homology of 2-complexes through the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::Complex;

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of small integers.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Diagonal entries `D[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[source * self.cols + c] * factor;
            if !v.is_zero() {
                self.data[target * self.cols + c] += v;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + source] * factor;
            if !v.is_zero() {
                self.data[r * self.cols + target] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = -std::mem::take(v);
        }
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Row and column transforms are recorded only when requested.
struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row(target, source, factor);
        if let Some(u) = &mut self.u {
            u.add_row(target, source, factor);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col(target, source, factor);
        if let Some(v) = &mut self.v {
            v.add_col(target, source, factor);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    /// Smallest nonzero |entry| among the given positions; ties keep the first.
    fn smallest(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for (r, c) in cells {
            let x = &self.a[(r, c)];
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if best.as_ref().is_none_or(|(_, m)| mag < *m) {
                best = Some(((r, c), mag));
            }
        }
        best.map(|(pos, _)| pos)
    }

    fn run(&mut self) {
        let (rows, cols) = (self.a.rows, self.a.cols);
        for t in 0..rows.min(cols) {
            let Some((r, c)) = self.smallest((t..rows).flat_map(|r| (t..cols).map(move |c| (r, c)))) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                        self.add_row(i, t, &-q);
                        clean &= self.a[(i, t)].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                        self.add_col(j, t, &-q);
                        clean &= self.a[(t, j)].is_zero();
                    }
                }
                if !clean {
                    // A remainder is smaller than the pivot: bring it in.
                    let cells = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                    let (r, c) = self.smallest(cells).expect("pivot is nonzero");
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                // Divisibility: the pivot must divide every remaining entry.
                let pivot = self.a[(t, t)].clone();
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.a[(i, j)].is_multiple_of(&pivot));
                match offender {
                    Some((i, _)) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are the smallest nonzero absolute value in the remaining block, ties
/// broken by the lowest (row, column) position. The diagonal of `d` is
/// non-negative with each entry dividing the next.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer { a: a.clone(), u: Some(IntMatrix::identity(a.rows)), v: Some(IntMatrix::identity(a.cols)) };
    r.run();
    SmithForm { d: r.a, u: r.u.unwrap(), v: r.v.unwrap() }
}

/// Nonzero invariant factors of `a`, without computing transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer { a: a.clone(), u: None, v: None };
    r.run();
    r.a.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
}

/// Boundary operators `∂₂: C₂ → C₁` and `∂₁: C₁ → C₀`.
///
/// Rows and columns follow the complex's vertex, edge and triangle order; each
/// simplex is oriented by increasing vertex index, so
/// `∂[a,b,c] = [b,c] - [a,c] + [a,b]` and `∂[a,b] = b - a`.
pub fn boundary_matrices(k: &Complex) -> (IntMatrix, IntMatrix) {
    let mut d2 = IntMatrix::zeros(k.edges().len(), k.triangles().len());
    for (t, &[a, b, c]) in k.triangles().iter().enumerate() {
        let e = |x, y| k.edge_id(x, y).expect("faces are edges");
        d2[(e(b, c), t)] += 1;
        d2[(e(a, c), t)] -= 1;
        d2[(e(a, b), t)] += 1;
    }
    let mut d1 = IntMatrix::zeros(k.vertex_count(), k.edges().len());
    for (e, &[a, b]) in k.edges().iter().enumerate() {
        d1[(b, e)] += 1;
        d1[(a, e)] -= 1;
    }
    (d2, d1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti: [usize; 3],
    /// Torsion coefficients of `H₀`, `H₁`, `H₂` (each > 1, each dividing the next).
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: [Vec<BigInt>; 3],
    pub is_acyclic: bool,
}

fn serialize_torsion<S: serde::Serializer>(t: &[Vec<BigInt>; 3], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = t.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
    serde::Serialize::serialize(&strings, s)
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (dim, (b, tors)) in self.betti.iter().zip(&self.torsion).enumerate() {
            let mut parts = Vec::new();
            if *b > 0 {
                parts.push(if *b == 1 { "Z".to_string() } else { format!("Z^{b}") });
            }
            parts.extend(tors.iter().map(|t| format!("Z/{t}")));
            let group = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            writeln!(f, "H{dim} = {group}")?;
        }
        write!(f, "acyclic: {}", self.is_acyclic)
    }
}

/// Integral homology from the Smith normal forms of the boundary matrices.
pub fn homology(k: &Complex) -> HomologyResult {
    let (d2, d1) = boundary_matrices(k);
    let f1 = invariant_factors(&d1);
    let f2 = invariant_factors(&d2);
    let (n0, n1, n2) = (k.vertex_count(), k.edges().len(), k.triangles().len());
    let (r1, r2) = (f1.len(), f2.len());
    let betti = [n0 - r1, n1 - r1 - r2, n2 - r2];
    let big = |v: Vec<BigInt>| v.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>();
    let torsion = [big(f1), big(f2), Vec::new()];
    let is_acyclic = betti == [1, 0, 0] && torsion.iter().all(Vec::is_empty);
    HomologyResult { betti, torsion, is_acyclic }
}

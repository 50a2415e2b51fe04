//! Dense matrices over a [`GaloisField`] and the eliminations the codecs use.

use serde::{Deserialize, Serialize};

use crate::gf::GaloisField;

/// Row-major matrix of encoded field elements. The field travels separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Outcome of [`Matrix::solve_left`] when no unique solution exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveFailure {
    /// Selected columns span fewer than `rows` dimensions.
    RankDeficient { rank: usize },
    /// Values are not consistent with any message.
    Inconsistent,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix, f: &GaloisField) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul(&self, v: &[u64], f: &GaloisField) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: &GaloisField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).unwrap();
            self.scale_row(r, inv, f);
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        self.axpy_row(i, r, factor, f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.clone().rref(f).len()
    }

    pub fn inverse(&self, f: &GaloisField) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Find the unique `x` with `x * self[:, cols] = values`.
    pub fn solve_left(
        &self,
        cols: &[usize],
        values: &[u64],
        f: &GaloisField,
    ) -> Result<Vec<u64>, SolveFailure> {
        assert_eq!(cols.len(), values.len());
        let k = self.rows;
        // One equation per selected column: sum_i x_i G[i][c] = value.
        let mut sys = Matrix::zeros(cols.len(), k + 1);
        for (e, (&c, &v)) in cols.iter().zip(values).enumerate() {
            for i in 0..k {
                sys.set(e, i, self.get(i, c));
            }
            sys.set(e, k, v);
        }
        let pivots = sys.rref(f);
        if pivots.last() == Some(&k) {
            return Err(SolveFailure::Inconsistent);
        }
        if pivots.len() < k {
            return Err(SolveFailure::RankDeficient { rank: pivots.len() });
        }
        Ok((0..k).map(|i| sys.get(i, k)).collect())
    }

    /// A nonzero `x` with `x * self[:, cols] = 0`, if the columns are rank deficient.
    pub fn left_kernel_vector(&self, cols: &[usize], f: &GaloisField) -> Option<Vec<u64>> {
        let k = self.rows;
        let mut sys = self.select_columns(cols).transpose();
        let pivots = sys.rref(f);
        if pivots.len() == k {
            return None;
        }
        let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
        let mut x = vec![0u64; k];
        x[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(sys.get(r, free));
        }
        Some(x)
    }

    /// Coefficients `a` with `sum_j a_j * columns[j] = target`, if any.
    pub fn express_in_columns(&self, cols: &[usize], target: &[u64], f: &GaloisField) -> Option<Vec<u64>> {
        let k = self.rows;
        assert_eq!(target.len(), k);
        let w = cols.len();
        let mut sys = Matrix::zeros(k, w + 1);
        for i in 0..k {
            for (j, &c) in cols.iter().enumerate() {
                sys.set(i, j, self.get(i, c));
            }
            sys.set(i, w, target[i]);
        }
        let pivots = sys.rref(f);
        if pivots.last() == Some(&w) {
            return None;
        }
        let mut a = vec![0u64; w];
        for (r, &pc) in pivots.iter().enumerate() {
            a[pc] = sys.get(r, w);
        }
        Some(a)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u64, f: &GaloisField) {
        for c in 0..self.cols {
            let v = f.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row[dst] -= factor * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, factor: u64, f: &GaloisField) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s != 0 {
                let v = f.sub(self.get(dst, c), f.mul(factor, s));
                self.set(dst, c, v);
            }
        }
    }
}

/// Fast rank of column subsets of a fixed generator matrix.
///
/// Column-subset ranks are invariant under row operations, so the matrix is
/// kept in reduced echelon form. A subset then has rank
/// `|pivots present| + rank(rows whose pivot is absent, restricted to the
/// present non-pivot columns)`, which only needs an elimination on a small
/// block when few columns are missing.
#[derive(Debug, Clone)]
pub struct ColumnRankOracle {
    reduced: Matrix,
    /// Row owning each column's pivot, if that column is a pivot column.
    pivot_row: Vec<Option<usize>>,
    rank: usize,
}

impl ColumnRankOracle {
    pub fn new(g: &Matrix, f: &GaloisField) -> Self {
        let mut reduced = g.clone();
        let pivots = reduced.rref(f);
        let mut pivot_row = vec![None; g.cols()];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(r);
        }
        ColumnRankOracle {
            reduced,
            pivot_row,
            rank: pivots.len(),
        }
    }

    /// Rank of the full matrix.
    pub fn full_rank(&self) -> usize {
        self.rank
    }

    /// Rank of the columns not flagged in `erased`.
    pub fn rank_without(&self, erased: &[bool], f: &GaloisField) -> usize {
        let mut missing_rows = Vec::new();
        for (c, pr) in self.pivot_row.iter().enumerate() {
            if let Some(r) = pr {
                if erased[c] {
                    missing_rows.push(*r);
                }
            }
        }
        let base = self.rank - missing_rows.len();
        if missing_rows.is_empty() {
            return self.rank;
        }
        let present: Vec<usize> = (0..self.reduced.cols())
            .filter(|&c| !erased[c] && self.pivot_row[c].is_none())
            .collect();
        let h = missing_rows.len();
        let w = present.len();
        let mut block = vec![0u64; h * w];
        for (i, &r) in missing_rows.iter().enumerate() {
            for (j, &c) in present.iter().enumerate() {
                block[i * w + j] = self.reduced.get(r, c);
            }
        }
        base + small_rank(&mut block, h, w, f)
    }
}

fn small_rank(m: &mut [u64], h: usize, w: usize, f: &GaloisField) -> usize {
    let mut rank = 0;
    for c in 0..w {
        if rank == h {
            break;
        }
        let Some(p) = (rank..h).find(|&i| m[i * w + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..w {
                m.swap(p * w + j, rank * w + j);
            }
        }
        let inv = f.inv(m[rank * w + c]).unwrap();
        for i in rank + 1..h {
            let factor = m[i * w + c];
            if factor == 0 {
                continue;
            }
            let factor = f.mul(factor, inv);
            for j in c..w {
                let s = m[rank * w + j];
                if s != 0 {
                    m[i * w + j] = f.sub(m[i * w + j], f.mul(factor, s));
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(m: u32) -> GaloisField {
        GaloisField::with_default(2, m).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(4);
        let a = Matrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        let inv = a.inverse(&f).expect("invertible");
        assert_eq!(a.mul(&inv, &f), Matrix::identity(3));
        let singular = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        let f5 = GaloisField::with_default(5, 1).unwrap();
        assert!(singular.inverse(&f5).is_none());
    }

    #[test]
    fn solve_left_reports_rank() {
        let f = GaloisField::with_default(5, 1).unwrap();
        let g = Matrix::from_rows(vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
        let m = [3u64, 4];
        let c = g.left_mul(&m, &f);
        assert_eq!(g.solve_left(&[2, 3], &[c[2], c[3]], &f).unwrap(), m.to_vec());
        assert_eq!(
            g.solve_left(&[2], &[c[2]], &f),
            Err(SolveFailure::RankDeficient { rank: 1 })
        );
        assert_eq!(
            g.solve_left(&[0, 0], &[1, 2], &f),
            Err(SolveFailure::Inconsistent)
        );
    }

    #[test]
    fn kernel_vector_annihilates() {
        let f = gf(3);
        let g = Matrix::from_rows(vec![vec![1, 0, 3, 5], vec![0, 1, 6, 7], vec![1, 1, 5, 2]]);
        let x = g.left_kernel_vector(&[0, 1, 2, 3], &f).expect("rank 2");
        assert!(x.iter().any(|&v| v != 0));
        assert!(g.left_mul(&x, &f).iter().all(|&v| v == 0));
    }

    proptest! {
        #[test]
        fn oracle_matches_plain_rank(
            entries in proptest::collection::vec(0u64..16, 4 * 9),
            mask in proptest::collection::vec(any::<bool>(), 9),
        ) {
            let f = gf(4);
            let g = Matrix::from_rows(entries.chunks(9).map(|c| c.to_vec()).collect());
            let oracle = ColumnRankOracle::new(&g, &f);
            let kept: Vec<usize> = (0..9).filter(|&c| !mask[c]).collect();
            prop_assert_eq!(oracle.rank_without(&mask, &f), g.select_columns(&kept).rank(&f));
        }
    }
}

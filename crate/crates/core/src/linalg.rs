//! Small dense exact linear algebra over the scalar field.

use crate::scalars::QRat;

/// Row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<QRat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![QRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = QRat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QRat>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &QRat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut QRat {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want_one = i == j;
                if want_one != self.at(i, j).is_one() || (!want_one && !self.at(i, j).is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = &cur + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x = &*x + y;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x = &*x - y;
        }
        out
    }

    pub fn scaled(&self, c: &QRat) -> Mat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = &*x * c;
        }
        out
    }

    #[allow(clippy::needless_range_loop)]
    pub fn apply(&self, v: &[QRat]) -> Vec<QRat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = QRat::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.at(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(p, j).clone();
                    let b = m.at(row, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(row, j) = a;
                }
            }
            let inv = m.at(row, col).inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.at(row, j) * &inv;
                *m.at_mut(row, j) = v;
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in 0..m.cols {
                    let v = m.at(r, j) - &(&factor * m.at(row, j));
                    *m.at_mut(r, j) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<QRat>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![QRat::zero(); self.cols];
            v[free] = QRat::one();
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(row_idx, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = QRat::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Greedy maximal invertible submatrix: row and column indices chosen in
    /// ascending order, each kept only when it raises the rank.
    pub fn greedy_pivot_submatrix(&self) -> (Vec<usize>, Vec<usize>) {
        let mut rows: Vec<usize> = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        let target = self.rank();
        for r in 0..self.rows {
            if rows.len() == target {
                break;
            }
            let mut trial_rows = rows.clone();
            trial_rows.push(r);
            let sub = self.select_rows(&trial_rows);
            if sub.rank() == trial_rows.len() {
                rows = trial_rows;
            }
        }
        let rowsub = self.select_rows(&rows);
        for c in 0..self.cols {
            if cols.len() == target {
                break;
            }
            let mut trial_cols = cols.clone();
            trial_cols.push(c);
            let sub = rowsub.select_cols(&trial_cols);
            if sub.rank() == trial_cols.len() {
                cols = trial_cols;
            }
        }
        (rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(r, j).clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                *out.at_mut(i, j) = self.at(i, c).clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_int;

    fn q(n: i64) -> QRat {
        QRat::q_pow(n)
    }

    #[test]
    fn rank_and_kernel_of_singular_matrix() {
        // rows: (1, q), (q, q^2) -- rank 1, kernel spanned by (q, -1)^T up to scale
        let m = Mat::from_rows(vec![vec![QRat::one(), q(1)], vec![q(1), q(2)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let image = m.apply(&k[0]);
        assert!(image.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_rows(vec![
            vec![QRat::one(), q(1)],
            vec![q(-1), q_int(2)],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn greedy_pivots_give_invertible_submatrix() {
        let m = Mat::from_rows(vec![
            vec![QRat::zero(), QRat::zero(), QRat::one()],
            vec![QRat::zero(), QRat::zero(), q(2)],
            vec![QRat::one(), q(1), QRat::zero()],
        ]);
        let (rows, cols) = m.greedy_pivot_submatrix();
        assert_eq!(rows.len(), 2);
        let sub = m.select_rows(&rows).select_cols(&cols);
        assert!(sub.inverse().is_some());
    }
}

use num_traits::Zero;

use crate::linalg::RationalMatrix;
use crate::rational::Q;

/// Column-sparse rational matrix: `cols[j]` lists the nonzero `(row, value)` entries of column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, Q)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        Self { rows, cols }
    }

    pub fn from_dense(m: &RationalMatrix) -> Self {
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        Self { rows: m.rows(), cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Q)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i] += a * x;
            }
        }
        out
    }

    /// `self * m`
    pub fn mul_dense(&self, m: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols(), m.rows());
        let mut out = RationalMatrix::zeros(self.rows, m.cols());
        for k in 0..m.rows() {
            for (i, a) in &self.cols[k] {
                for j in 0..m.cols() {
                    let b = &m[(k, j)];
                    if !b.is_zero() {
                        out[(*i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `m * self`
    pub fn dense_mul(m: &RationalMatrix, s: &SparseMatrix) -> RationalMatrix {
        assert_eq!(m.cols(), s.rows);
        let mut out = RationalMatrix::zeros(m.rows(), s.cols());
        for (j, col) in s.cols.iter().enumerate() {
            for (k, a) in col {
                for i in 0..m.rows() {
                    let b = &m[(i, *k)];
                    if !b.is_zero() {
                        out[(i, j)] += b * a;
                    }
                }
            }
        }
        out
    }
}

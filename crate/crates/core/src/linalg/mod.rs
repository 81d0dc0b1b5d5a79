//! Exact rational linear algebra: dense matrices, echelon subspaces,
//! kernels, span membership and quotient representatives.

mod jordan;
mod qseries;

pub use jordan::{jordan_data, rank_sequence, JordanReport};
pub use qseries::{partition_numbers, partition_qseries, QSeries};

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, x: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a `rows x cols` matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Parses nested arrays of `"p/q"` strings.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(fmt_q).collect())
            .collect()
    }

    /// Square matrix with `lambda` on the diagonal and 1 on the superdiagonal.
    pub fn jordan_block(lambda: &Q, size: usize) -> Self {
        let mut m = Self::scalar(size, lambda);
        for i in 1..size {
            m[(i - 1, i)] = Q::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
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
        Ok(out)
    }

    pub fn apply(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..*self })
    }

    /// `self += c * other`; shapes must agree.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn scale(&self, x: &Q) -> Self {
        Self {
            data: self.data.iter().map(|a| a * x).collect(),
            ..*self
        }
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial `sum c_i M^i` (coefficients in ascending degree).
    pub fn poly(&self, coeffs: &[Q]) -> Result<Self> {
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?.add(&Self::scalar(self.rows, c))?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        Subspace::span(self.cols, (0..self.rows).map(|r| self.row(r).to_vec())).dim()
    }

    pub fn determinant(&self) -> Result<Q> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &a[(r, c)] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    /// Restricts the rows and columns to the given index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

/// A subspace of `Q^dim` held as a fully reduced echelon basis.
///
/// The pivot of each row is its highest-index nonzero coordinate and is
/// normalized to 1. Reducing a vector therefore leaves a residual supported
/// on the lowest available coordinates, which is what makes graded-lex-least
/// quotient representatives fall out of the non-pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside(Vec<Q>),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

fn pivot_of(v: &[Q]) -> Option<usize> {
    v.iter().rposition(|x| !x.is_zero())
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        let mut s = Self::zero(dim);
        for i in 0..dim {
            let mut e = vec![Q::zero(); dim];
            e[i] = Q::one();
            s.rows.push(e);
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vec<Q>>>(dim: usize, vectors: I) -> Self {
        let mut s = Self::zero(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the basis; returns the residual.
    pub fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v` to the span. Returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length must match ambient dimension");
        let mut r = self.reduce(v);
        let Some(p) = pivot_of(&r) else {
            return false;
        };
        let inv = Q::one() / &r[p];
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn span_membership(&self, v: &[Q]) -> Result<Membership> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let r = self.reduce(v.to_vec());
        Ok(if r.iter().all(Zero::is_zero) {
            Membership::Inside
        } else {
            Membership::Outside(r)
        })
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.span_membership(v).map(|m| m.is_inside()).unwrap_or(false)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = sum a_i s_i = sum b_j o_j  <=>  (a, -b) in ker [S^T | -O^T]
        let (m, k) = (self.dim(), other.dim());
        let mut cols = Vec::with_capacity(m + k);
        for r in &self.rows {
            cols.push(r.clone());
        }
        for r in &other.rows {
            cols.push(r.iter().map(|x| -x).collect());
        }
        let mat = RationalMatrix::from_columns(self.dim, &cols);
        let ker = kernel(&mat);
        Subspace::span(
            self.dim,
            ker.basis().iter().map(|coef| {
                let mut v = vec![Q::zero(); self.dim];
                for (a, r) in coef[..m].iter().zip(&self.rows) {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(r) {
                        *x += a * y;
                    }
                }
                v
            }),
        )
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, m: &RationalMatrix) -> Result<Subspace> {
        let mut out = Subspace::zero(m.rows());
        for r in &self.rows {
            out.insert(m.apply(r)?);
        }
        Ok(out)
    }

    /// Coordinates that are not pivots, in ascending order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.dim).filter(|&i| !is_pivot[i]).collect()
    }
}

/// Reduced row echelon form with leading pivots: `(rows, pivot columns)`.
fn rref(m: &RationalMatrix) -> (Vec<Vec<Q>>, Vec<usize>) {
    let n = m.cols();
    let mut rows: Vec<Vec<Q>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// A solution of `m x = b` with every free variable set to zero, if one exists.
pub fn solve(m: &RationalMatrix, b: &[Q]) -> Result<Option<Vec<Q>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: b.len(),
        });
    }
    let mut aug = RationalMatrix::zeros(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols())] = b[i].clone();
    }
    let (rows, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); m.cols()];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[m.cols()].clone();
    }
    Ok(Some(x))
}

/// Exact null space of `m` as a subspace of `Q^{cols}`.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let n = m.cols();
    let (rows, pivots) = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis = (0..n).filter(|&f| !is_pivot[f]).map(|f| {
        let mut v = vec![Q::zero(); n];
        v[f] = Q::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        v
    });
    Subspace::span(n, basis)
}

/// Graded-lex-least coordinate labels whose images are independent modulo
/// `sub` and which span `ambient` modulo `sub`. Coordinates are assumed to be
/// listed in graded-lex order already.
pub fn quotient_basis(ambient: &Subspace, sub: &Subspace) -> Result<Vec<usize>> {
    if ambient.ambient_dim() != sub.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: ambient.ambient_dim(),
            got: sub.ambient_dim(),
        });
    }
    if !sub.is_subspace_of(ambient) {
        return Err(Error::Containment);
    }
    let target = ambient.dim() - sub.dim();
    let mut acc = sub.clone();
    let mut reps = Vec::with_capacity(target);
    for i in 0..ambient.ambient_dim() {
        if reps.len() == target {
            break;
        }
        let mut e = vec![Q::zero(); ambient.ambient_dim()];
        e[i] = Q::one();
        if ambient.contains(&e) && acc.insert(e) {
            reps.push(i);
        }
    }
    if reps.len() != target {
        return Err(Error::Unsupported(
            "ambient subspace is not spanned by coordinate vectors modulo the subspace".into(),
        ));
    }
    Ok(reps)
}

/// A matrix wrapper serialized as nested arrays of `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixStrings(pub Vec<Vec<String>>);

impl From<&RationalMatrix> for MatrixStrings {
    fn from(m: &RationalMatrix) -> Self {
        MatrixStrings(m.to_strings())
    }
}

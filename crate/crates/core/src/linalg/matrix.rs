use std::fmt;

use serde::{Deserialize, Serialize};

use super::{gf2, Prime, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(p: Prime, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(p.reduce(f(i, j)));
            }
        }
        Matrix { p, rows, cols, data }
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Matrix::from_rows_with_cols(p, cols, rows)
    }

    /// Like [`Matrix::from_rows`] but with an explicit width, so that 0-row
    /// matrices keep their column count.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(p: Prime, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| p.reduce(x)));
        }
        Ok(Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from rows that are already reduced mod p.
    pub fn from_reduced_rows(p: Prime, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            debug_assert!(r.iter().all(|&x| x < p.get()));
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p.get());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = self.p.get() as u64;
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let p = self.p.get() as u64;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32
            })
            .collect())
    }

    /// Row vector times matrix: the combination `sum_i c[i] * row(i)`.
    pub fn combine_rows(&self, coeffs: &[u32]) -> Result<Vec<u32>> {
        if coeffs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: coeffs.len(),
            });
        }
        let mut out = vec![0u32; self.cols];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                axpy(self.p, &mut out, c, self.row(i));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |p, a, b| p.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |p, a, b| p.sub(a, b))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(Prime, u32, u32) -> u32) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(self.p, a, b)).collect(),
        })
    }

    pub fn scale(&self, c: u32) -> Matrix {
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| self.p.mul(a, c)).collect(),
        }
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        out
    }

    /// Reduced row-echelon form. Dispatches to the packed kernel when p = 2.
    pub fn rref(&self) -> Rref {
        if self.p.get() == 2 {
            gf2::rref(self)
        } else {
            self.rref_generic()
        }
    }

    /// Generic elimination: leftmost pivot column, first nonzero row at or
    /// below the current position, pivots normalized to 1, column cleared
    /// above and below.
    pub fn rref_generic(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(src) = (row..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            m.swap_rows(row, src);
            let inv = p.inv(m.get(row, col));
            if inv != 1 {
                for x in m.row_mut(row) {
                    *x = p.mul(*x, inv);
                }
            }
            let pivot_row = m.row(row).to_vec();
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col);
                if f != 0 {
                    axpy(p, m.row_mut(i), p.neg(f), &pivot_row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Null space `{v : M v = 0}` as a canonical subspace of F_p^cols.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix: r, pivots } = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let gens: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = p.neg(r.get(i, f));
                }
                v
            })
            .collect();
        let k = Subspace::from_reduced_vectors(p, self.cols, &gens);
        assert_eq!(k.dim() + pivots.len(), self.cols, "rank-nullity violated");
        k
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(&self.transpose())
    }

    /// Some solution of `M x = b`, or `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, b[i] % self.p.get());
        }
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Coefficients `c` with `sum_i c[i] * row(i) = target`, if any exist.
    pub fn solve_row_combination(&self, target: &[u32]) -> Result<Option<Vec<u32>>> {
        self.transpose().solve(target)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        Ok(determinant_in_place(self.p, &mut self.data.clone(), self.rows))
    }
}

/// `dst += c * src` over F_p.
#[inline]
pub(crate) fn axpy(p: Prime, dst: &mut [u32], c: u32, src: &[u32]) {
    let q = p.get() as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ((*d as u64 + c as u64 * s as u64) % q) as u32;
        }
    }
}

/// Determinant by elimination on a scratch buffer of size n*n.
pub(crate) fn determinant_in_place(p: Prime, a: &mut [u32], n: usize) -> u32 {
    let mut det = 1u32;
    for col in 0..n {
        let Some(src) = (col..n).find(|&i| a[i * n + col] != 0) else {
            return 0;
        };
        if src != col {
            for j in 0..n {
                a.swap(src * n + j, col * n + j);
            }
            det = p.neg(det);
        }
        let pivot = a[col * n + col];
        det = p.mul(det, pivot);
        let inv = p.inv(pivot);
        for i in col + 1..n {
            let f = a[i * n + col];
            if f == 0 {
                continue;
            }
            let f = p.mul(f, inv);
            for j in col..n {
                let v = p.mul(f, a[col * n + j]);
                a[i * n + j] = p.sub(a[i * n + j], v);
            }
        }
    }
    det
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: Prime,
    #[serde(default)]
    cols: Option<usize>,
    rows: Vec<Vec<i64>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            p: self.p,
            cols: Some(self.cols),
            rows: (0..self.rows)
                .map(|i| self.row(i).iter().map(|&x| x as i64).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let cols = raw.cols.unwrap_or_else(|| raw.rows.first().map_or(0, Vec::len));
        Matrix::from_rows_with_cols(raw.p, cols, &raw.rows).map_err(serde::de::Error::custom)
    }
}

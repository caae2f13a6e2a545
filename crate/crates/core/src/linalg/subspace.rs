use serde::{Serialize, Serializer};

use super::matrix::axpy;
use super::{Matrix, Prime};
use crate::error::{Error, Result};

/// A subspace of F_p^n held by its reduced row-echelon basis.
///
/// The basis is canonical: two generating sets of the same subspace produce
/// identical `Subspace` values, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: Prime, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::zeros(p, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: Prime, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::identity(p, n),
            pivots: (0..n).collect(),
        }
    }

    /// Row space of `generators`.
    pub fn span(generators: &Matrix) -> Self {
        let r = generators.rref();
        let rank = r.rank();
        let rows: Vec<Vec<u32>> = (0..rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: generators.cols(),
            basis: Matrix::from_reduced_rows(generators.p(), generators.cols(), &rows)
                .expect("rows have matching width"),
            pivots: r.pivots,
        }
    }

    pub(crate) fn from_reduced_vectors(p: Prime, n: usize, gens: &[Vec<u32>]) -> Self {
        let m = Matrix::from_reduced_rows(p, n, gens).expect("generators have width n");
        Subspace::span(&m)
    }

    /// Wraps rows that are already in canonical rref with the given pivots.
    pub(crate) fn from_rref_rows(p: Prime, n: usize, rows: &[Vec<u32>], pivots: Vec<usize>) -> Self {
        let basis = Matrix::from_reduced_rows(p, n, rows).expect("rows have width n");
        debug_assert_eq!(basis.rref().matrix, basis);
        Subspace {
            ambient_dim: n,
            basis,
            pivots,
        }
    }

    /// Span of integer vectors (reduced mod p).
    pub fn from_vectors<R: AsRef<[i64]>>(p: Prime, n: usize, gens: &[R]) -> Result<Self> {
        Ok(Subspace::span(&Matrix::from_rows_with_cols(p, n, gens)?))
    }

    pub fn p(&self) -> Prime {
        self.basis.p()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The rref basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_vector(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p() != other.p() {
            return Err(Error::FieldMismatch {
                left: self.p().get(),
                right: other.p().get(),
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo this subspace: the unique representative
    /// vanishing on every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.check_vector(v)?;
        let p = self.p();
        let mut w: Vec<u32> = v.iter().map(|&x| x % p.get()).collect();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                axpy(p, &mut w, p.neg(f), self.basis.row(i));
            }
        }
        Ok(w)
    }

    /// Coefficients of `v` against the rref basis, or `None` if `v` is not in
    /// the subspace.
    pub fn member(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        self.check_vector(v)?;
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| v[c] % self.p().get()).collect();
        let back = self.basis.combine_rows(&coeffs)?;
        let reduced: Vec<u32> = v.iter().map(|&x| x % self.p().get()).collect();
        Ok((back == reduced).then_some(coeffs))
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        Ok(self.member(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for i in 0..self.dim() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(&self.basis.stack(&other.basis)?))
    }

    /// `U ∩ W` from the left kernel of the stacked bases: a relation
    /// `sum a_i u_i = sum b_j w_j` gives the intersection vector.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        let relations = stacked.transpose().kernel();
        let k = self.dim();
        let gens: Vec<Vec<u32>> = relations
            .basis_vectors()
            .iter()
            .map(|c| self.basis.combine_rows(&c[..k]).expect("coefficient length"))
            .collect();
        Ok(Subspace::from_reduced_vectors(self.p(), self.ambient_dim, &gens))
    }

    /// `(U + W, U ∩ W)`, asserting the dimension formula.
    pub fn sum_and_intersection(&self, other: &Subspace) -> Result<(Subspace, Subspace)> {
        let s = self.sum(other)?;
        let i = self.intersection(other)?;
        assert_eq!(s.dim() + i.dim(), self.dim() + other.dim(), "Grassmann formula violated");
        Ok((s, i))
    }

    /// All `p^dim` elements; only for small subspaces.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        super::all_vectors(self.p(), self.dim()).map(|c| self.basis.combine_rows(&c).expect("coefficient length"))
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            p: Prime,
            ambient_dim: usize,
            dim: usize,
            pivots: &'a [usize],
            basis: Vec<Vec<u32>>,
        }
        Repr {
            p: self.p(),
            ambient_dim: self.ambient_dim,
            dim: self.dim(),
            pivots: &self.pivots,
            basis: self.basis_vectors(),
        }
        .serialize(s)
    }
}

/// Incrementally maintained rref span, for accumulating many vectors without
/// materializing the full generator matrix.
#[derive(Clone, Debug)]
pub struct SpanAccumulator {
    p: Prime,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanAccumulator {
    pub fn new(p: Prime, n: usize) -> Self {
        SpanAccumulator {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Adds `v`; returns `true` if the span grew.
    pub fn push(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.n, "vector length");
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                axpy(p, &mut w, p.neg(f), row);
            }
        }
        let Some(lead) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = p.inv(w[lead]);
        for x in w.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let f = row[lead];
            if f != 0 {
                axpy(p, row, p.neg(f), &w);
            }
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.rows.insert(at, w);
        self.pivots.insert(at, lead);
        true
    }

    pub fn merge(mut self, other: SpanAccumulator) -> SpanAccumulator {
        for row in &other.rows {
            self.push(row);
        }
        self
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient_dim: self.n,
            basis: Matrix::from_reduced_rows(self.p, self.n, &self.rows).expect("rows have width n"),
            pivots: self.pivots,
        }
    }
}

use std::collections::VecDeque;

use rayon::prelude::*;

use super::SymplecticSpace;
use crate::error::{Error, Result};
use crate::exterior::{binomial, pullback_matrix, Multivector};
use crate::linalg::{all_vectors, Matrix, SpanAccumulator, Subspace};

impl SymplecticSpace {
    /// `t_v(x) = x + Ψ(x, v)·v`, as a matrix acting on column vectors.
    pub fn transvection(&self, v: &[u32]) -> Result<Matrix> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        if v.iter().all(|&c| c % self.p.get() == 0) {
            return Err(Error::ZeroVector);
        }
        // Ψ(x, v) = (G v) · x
        let gv = self.gram.mul_vec(v)?;
        let p = self.p;
        let t = Matrix::from_fn(p, self.n(), self.n(), |i, j| {
            (i == j) as i64 + p.mul(v[i] % p.get(), gv[j]) as i64
        });
        debug_assert_eq!(t.transpose().mul(&self.gram).unwrap().mul(&t).unwrap(), self.gram);
        Ok(t)
    }

    /// Induced action of every transvection on degree-r forms.
    pub fn transvection_pullbacks(&self, r: usize) -> Vec<Matrix> {
        let vs: Vec<Vec<u32>> = all_vectors(self.p, self.n()).skip(1).collect();
        vs.par_iter()
            .map(|v| {
                let t = self.transvection(v).expect("nonzero vector");
                pullback_matrix(&t, r as i64).expect("nonnegative degree")
            })
            .collect()
    }

    /// Smallest subspace of `Λʳ` containing `seeds` and stable under all
    /// transvections.
    pub fn submodule_closure(&self, r: i64, seeds: &[Multivector]) -> Result<Subspace> {
        let r = self.check_degree(r)?;
        for s in seeds {
            self.check(s)?;
            s.homogeneous_degree()?;
            if s.degrees().iter().any(|&d| d != r) {
                return Err(Error::NotHomogeneous);
            }
        }
        let dim = binomial(self.n(), r);
        let mut acc = SpanAccumulator::new(self.p, dim);
        let mut queue = VecDeque::new();
        for s in seeds {
            let c = s.coords(r);
            if acc.push(&c) {
                queue.push_back(c);
            }
        }
        if queue.is_empty() {
            return Ok(acc.into_subspace());
        }
        let actions = self.transvection_pullbacks(r);
        while let Some(v) = queue.pop_front() {
            if acc.is_full() {
                break;
            }
            for t in &actions {
                let w = t.mul_vec(&v)?;
                if acc.push(&w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(acc.into_subspace())
    }

    /// Whether `sub ⊆ Λʳ` is carried into itself by every transvection.
    pub fn is_transvection_stable(&self, r: usize, sub: &Subspace) -> Result<bool> {
        for t in self.transvection_pullbacks(r) {
            for v in sub.basis_vectors() {
                if !sub.contains(&t.mul_vec(&v)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

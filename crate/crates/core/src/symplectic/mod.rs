//! The symplectic space `(V, Ψ)` with `V = F_p^{2m}` and the sl2 action on
//! `Λ*V` generated by `X₋ = Γ∧·`, the contraction `X₊`, and `H`.
//!
//! Coordinates are `x1..xm, y1..ym` with `Ψ(xᵢ, yᵢ) = 1`. A symplectic basis
//! written `(e₁,…,e_m, e₋ₘ,…,e₋₁)` corresponds to `(x1,…,xm, ym,…,y1)`.

mod ladder;
mod operators;
mod premet;
mod primitive;
mod transvection;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exterior::{Multivector, VariableOrder};
use crate::isotropic::IsotropicCatalog;
use crate::linalg::{Matrix, Prime};

pub use ladder::LadderSequence;
pub use operators::{DegreeCheck, OperatorKind, OperatorReport, Sl2Report, SIGMA};
pub use premet::{premet_suprunenko, PremetSuprunenko};
pub use primitive::{Decomposition, XMinusProbe};

/// Largest supported `m` (monomials are 64-bit sets).
pub const MAX_RANK: usize = 32;

/// `F_p^{2m}` with its standard symplectic form.
#[derive(Clone)]
pub struct SymplecticSpace {
    p: Prime,
    m: usize,
    gram: Matrix,
    order: VariableOrder,
    catalogs: Arc<Mutex<HashMap<usize, Arc<IsotropicCatalog>>>>,
}

impl std::fmt::Debug for SymplecticSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymplecticSpace").field("p", &self.p).field("m", &self.m).finish()
    }
}

impl PartialEq for SymplecticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for SymplecticSpace {}

impl SymplecticSpace {
    pub fn new(p: Prime, m: usize) -> Result<Self> {
        if m == 0 || m > MAX_RANK {
            return Err(Error::InvalidRank(m));
        }
        let gram = Matrix::from_fn(p, 2 * m, 2 * m, |i, j| {
            if j == i + m {
                1
            } else if i == j + m {
                -1
            } else {
                0
            }
        });
        debug_assert_eq!(gram.rank(), 2 * m);
        Ok(SymplecticSpace {
            p,
            m,
            gram,
            order: VariableOrder::new(m),
            catalogs: Arc::default(),
        })
    }

    /// Shorthand for tests and the CLI: validates `p` as well.
    pub fn with(p: u64, m: usize) -> Result<Self> {
        SymplecticSpace::new(Prime::new(p)?, m)
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// `dim V = 2m`.
    #[inline]
    pub fn n(&self) -> usize {
        2 * self.m
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    /// `Ψ(u, v) = Σ u_xᵢ v_yᵢ − u_yᵢ v_xᵢ`.
    pub fn omega(&self, u: &[u32], v: &[u32]) -> u32 {
        debug_assert_eq!(u.len(), self.n());
        debug_assert_eq!(v.len(), self.n());
        let p = self.p;
        let m = self.m;
        let mut acc = 0u64;
        let q = p.get() as u64;
        for i in 0..m {
            acc += u[i] as u64 * v[m + i] as u64 + (q - 1) * ((u[m + i] as u64 * v[i] as u64) % q);
            acc %= q;
        }
        acc as u32
    }

    /// `true` when every pair of rows of `basis` pairs to zero.
    pub fn is_isotropic(&self, basis: &Matrix) -> bool {
        (0..basis.rows()).all(|i| (i + 1..basis.rows()).all(|j| self.omega(basis.row(i), basis.row(j)) == 0))
    }

    pub(crate) fn check(&self, mv: &Multivector) -> Result<()> {
        if mv.p() != self.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: mv.p().get(),
            });
        }
        if mv.n() != self.n() {
            return Err(Error::RankMismatch {
                left: self.m,
                right: mv.n() / 2,
            });
        }
        Ok(())
    }

    pub(crate) fn check_degree(&self, r: i64) -> Result<usize> {
        if r < 0 || r > self.n() as i64 {
            return Err(Error::DegreeOutOfRange {
                degree: r,
                min: 0,
                max: self.n() as i64,
            });
        }
        Ok(r as usize)
    }

    pub fn parse(&self, text: &str) -> Result<Multivector> {
        Multivector::parse(text, self.p, self.m)
    }

    pub fn zero(&self) -> Multivector {
        Multivector::zero(self.p, self.n())
    }

    pub fn one(&self) -> Multivector {
        Multivector::one(self.p, self.n())
    }

    pub(crate) fn catalog_cache(&self) -> &Mutex<HashMap<usize, Arc<IsotropicCatalog>>> {
        &self.catalogs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_is_standard() {
        let s = SymplecticSpace::with(5, 2).unwrap();
        let g = s.gram();
        assert_eq!(g.transpose(), g.scale(4));
        assert_eq!(g.rank(), 4);
        // x1 . y1 = 1, y1 . x1 = -1
        assert_eq!(s.omega(&[1, 0, 0, 0], &[0, 0, 1, 0]), 1);
        assert_eq!(s.omega(&[0, 0, 1, 0], &[1, 0, 0, 0]), 4);
        assert_eq!(s.omega(&[1, 0, 0, 0], &[0, 0, 0, 1]), 0);
    }

    #[test]
    fn omega_matches_gram() {
        let s = SymplecticSpace::with(3, 2).unwrap();
        let u = [1, 2, 0, 1];
        let v = [2, 2, 1, 0];
        let gv = s.gram().mul_vec(&v).unwrap();
        let direct = u.iter().zip(&gv).map(|(&a, &b)| a * b).sum::<u32>() % 3;
        assert_eq!(s.omega(&u, &v), direct);
    }

    #[test]
    fn invalid_ranks() {
        assert!(matches!(SymplecticSpace::with(2, 0), Err(Error::InvalidRank(0))));
        assert!(matches!(SymplecticSpace::with(4, 1), Err(Error::NotPrime(4))));
    }
}

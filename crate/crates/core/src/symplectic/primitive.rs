use log::warn;
use serde::Serialize;

use super::SymplecticSpace;
use crate::error::{Error, Result};
use crate::exterior::{binomial, binomial_signed, wedge_of_rows, Multivector};
use crate::linalg::{Matrix, SpanAccumulator, Subspace};

/// `α = e + X₋(β)` with `e` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub r: usize,
    pub primitive: Multivector,
    pub beta: Multivector,
}

/// Rank data of `X₋ : Λʳ → Λ^{r+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XMinusProbe {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub corank: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl SymplecticSpace {
    /// `E_r = Λʳ ∩ ker X₊`.
    pub fn primitive_basis(&self, r: i64) -> Result<Subspace> {
        let r = self.check_degree(r)?;
        Ok(self.x_plus_matrix(r).kernel())
    }

    /// `dim Λʳ − dim Λ^{r−2}`.
    pub fn primitive_dimension_formula(&self, r: usize) -> usize {
        binomial(self.n(), r) - binomial_signed(self.n() as i64, r as i64 - 2)
    }

    /// `F_r`: the span of `v₁∧…∧v_r` over all totally isotropic
    /// `⟨v₁,…,v_r⟩`. Empty above degree m.
    pub fn isotropic_span_basis(&self, r: i64) -> Result<Subspace> {
        let r = self.check_degree(r)?;
        let dim = binomial(self.n(), r);
        if r > self.m {
            warn!("no isotropic subspaces of dimension {r} > m = {}", self.m);
            return Ok(Subspace::zero(self.p, dim));
        }
        let p = self.p;
        let n = self.n();
        let acc = self.fold_isotropic(
            r,
            || SpanAccumulator::new(p, dim),
            |mut acc, rows| {
                let b = Matrix::from_reduced_rows(p, n, rows).expect("row width");
                acc.push(&wedge_of_rows(&b));
                acc
            },
            SpanAccumulator::merge,
        )?;
        let f = acc.into_subspace();
        assert_eq!(f.dim(), self.primitive_dimension_formula(r), "dim F_{r} off the formula");
        Ok(f)
    }

    /// Image of `X₋` from `Λ^{r−2}` inside `Λʳ`.
    pub(crate) fn x_minus_image(&self, r: usize) -> Subspace {
        if r < 2 {
            return Subspace::zero(self.p, binomial(self.n(), r));
        }
        self.x_minus_matrix(r - 2).column_space()
    }

    /// Splits a homogeneous `α` as `e + Γ∧β` with `X₊e = 0`. Refuses with the
    /// defect dimensions when `E_r + X₋(Λ^{r−2})` is not a direct sum filling
    /// `Λʳ`.
    pub fn decompose(&self, alpha: &Multivector, degree: Option<usize>) -> Result<Decomposition> {
        self.check(alpha)?;
        let r = match (alpha.homogeneous_degree()?, degree) {
            (Some(d), Some(e)) if d != e => return Err(Error::NotHomogeneous),
            (Some(d), _) | (None, Some(d)) => d,
            (None, None) => 0,
        };
        let r = self.check_degree(r as i64)?;
        let total = binomial(self.n(), r);
        let e = self.primitive_basis(r as i64)?;
        let image = self.x_minus_image(r);
        let (sum, inter) = e.sum_and_intersection(&image)?;
        if !inter.is_zero() || sum.dim() != total {
            return Err(Error::DecompositionDefect {
                primitive: e.dim(),
                image: image.dim(),
                intersection: inter.dim(),
                sum: sum.dim(),
                total,
            });
        }

        let below = if r >= 2 { binomial(self.n(), r - 2) } else { 0 };
        let mut gens = e.basis().clone();
        if r >= 2 {
            gens = gens.stack(&self.x_minus_matrix(r - 2).transpose())?;
        }
        let coeffs = gens
            .solve_row_combination(&alpha.coords(r))?
            .expect("the sum fills the whole degree");
        let k = e.dim();
        let prim = e.basis().combine_rows(&coeffs[..k])?;
        let primitive = Multivector::from_coords(self.p, self.n(), r, &prim)?;
        let beta = if r >= 2 {
            Multivector::from_coords(self.p, self.n(), r - 2, &coeffs[k..k + below])?
        } else {
            self.zero()
        };
        assert_eq!(&primitive + &self.x_minus(&beta)?, alpha.component(r), "reassembly failed");
        Ok(Decomposition { r, primitive, beta })
    }

    pub fn x_minus_probe(&self, r: i64) -> Result<XMinusProbe> {
        let hi = self.n() as i64 - 2;
        if r < 0 || r > hi {
            return Err(Error::DegreeOutOfRange {
                degree: r,
                min: 0,
                max: hi,
            });
        }
        let r = r as usize;
        let mat = self.x_minus_matrix(r);
        let rank = mat.rank();
        Ok(XMinusProbe {
            p: self.p.get(),
            m: self.m,
            r,
            source_dim: mat.cols(),
            target_dim: mat.rows(),
            rank,
            corank: mat.rows() - rank,
            injective: rank == mat.cols(),
            surjective: rank == mat.rows(),
        })
    }
}

use rayon::prelude::*;
use serde::Serialize;

use super::SymplecticSpace;
use crate::error::Result;
use crate::exterior::{binomial, left_multiplication_matrix, monomials, Monomial, Multivector};
use crate::linalg::Matrix;

/// Global sign applied to the contraction formula for `X₊`.
///
/// The contraction sum as usually printed gives `X₊X₋(1) = +m`, while
/// `[X₊, X₋] = −H` with `H = m − r` on `Λʳ` needs `−m`. Multiplying the sum by
/// `−1` makes all three bracket relations hold; kernels and images of `X₊`
/// are unaffected by the choice.
pub const SIGMA: i64 = -1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    XMinus,
    XPlus,
    H,
}

/// An operator restricted to `Λʳ`, with its rank data.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorReport {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    pub operator: OperatorKind,
    pub sigma: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// `target_dim − rank`.
    pub corank: usize,
    pub kernel: Vec<String>,
    #[serde(skip)]
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub r: usize,
    /// `[X₊, X₋] = −H`
    pub xplus_xminus: bool,
    /// `[H, X₊] = 2X₊`
    pub h_xplus: bool,
    /// `[H, X₋] = −2X₋`
    pub h_xminus: bool,
}

impl DegreeCheck {
    pub fn ok(&self) -> bool {
        self.xplus_xminus && self.h_xplus && self.h_xminus
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Report {
    pub p: u32,
    pub m: usize,
    pub sigma: i64,
    pub ok: bool,
    pub degrees: Vec<DegreeCheck>,
}

impl SymplecticSpace {
    /// `Γ = Σ xᵢ∧yᵢ`.
    pub fn gamma(&self) -> Multivector {
        let n = self.n();
        let mut g = self.zero();
        for i in 0..self.m {
            let mono = Monomial::generator(i).wedge(Monomial::generator(self.m + i)).expect("distinct").0;
            g = &g + &Multivector::monomial(self.p, n, mono, 1);
        }
        g
    }

    /// `Γ* = −Σ xᵢ∧yᵢ`, read on the dual coordinates.
    pub fn gamma_dual(&self) -> Multivector {
        -&self.gamma()
    }

    /// `X₋(α) = Γ ∧ α`.
    pub fn x_minus(&self, alpha: &Multivector) -> Result<Multivector> {
        self.check(alpha)?;
        self.gamma().wedge(alpha)
    }

    /// Contraction lowering degree by two.
    pub fn x_plus(&self, alpha: &Multivector) -> Result<Multivector> {
        self.check(alpha)?;
        Ok(self.x_plus_signed(alpha, SIGMA))
    }

    pub(crate) fn x_plus_signed(&self, alpha: &Multivector, sigma: i64) -> Multivector {
        let p = self.p;
        let mut out = self.zero();
        for (&mono, &c) in alpha.terms() {
            for (mono2, coeff) in self.contract(mono, sigma) {
                out = &out + &Multivector::monomial(p, self.n(), mono2, coeff * c as i64);
            }
        }
        out
    }

    /// Terms of `σ Σ_{i<j} (−Ψ)(vᵢ, vⱼ)(−1)^{i+j} v₁∧…v̂ᵢ…v̂ⱼ…∧v_r` for the
    /// monomial `v₁∧…∧v_r` (positions counted from 1).
    fn contract(&self, mono: Monomial, sigma: i64) -> Vec<(Monomial, i64)> {
        let idx = mono.indices();
        let mut out = Vec::new();
        for (a, &u) in idx.iter().enumerate() {
            if u >= self.m {
                break;
            }
            // with x before y, the only nonzero pairing among sorted factors
            // is Ψ(xᵢ, yᵢ) = 1
            if let Some(b) = idx.iter().position(|&w| w == u + self.m) {
                let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                out.push((mono.without(u).without(u + self.m), -sigma * sign));
            }
        }
        out
    }

    /// `H(α)`: the degree-r part scaled by `m − r`.
    pub fn h_op(&self, alpha: &Multivector) -> Result<Multivector> {
        self.check(alpha)?;
        let mut out = self.zero();
        for r in alpha.degrees() {
            let w = self.p.reduce(self.m as i64 - r as i64);
            out = &out + &alpha.component(r).scale(w);
        }
        Ok(out)
    }

    /// `X₋ : Λʳ → Λ^{r+2}` in colex coordinates.
    pub fn x_minus_matrix(&self, r: usize) -> Matrix {
        left_multiplication_matrix(&self.gamma(), r).expect("Γ is homogeneous")
    }

    /// `X₊ : Λʳ → Λ^{r−2}`; the zero map out of degrees 0 and 1.
    pub fn x_plus_matrix(&self, r: usize) -> Matrix {
        self.x_plus_matrix_signed(r, SIGMA)
    }

    pub(crate) fn x_plus_matrix_signed(&self, r: usize, sigma: i64) -> Matrix {
        let n = self.n();
        let rows = if r >= 2 { binomial(n, r - 2) } else { 0 };
        let mut out = Matrix::zeros(self.p, rows, binomial(n, r));
        for (col, mono) in monomials(n, r).enumerate() {
            for (low, c) in self.contract(mono, sigma) {
                let row = crate::exterior::mono_rank(low, r - 2).expect("degree r-2");
                out.set(row, col, self.p.add(out.get(row, col), self.p.reduce(c)));
            }
        }
        out
    }

    /// `H = (m − r)·id` on `Λʳ`.
    pub fn h_matrix(&self, r: usize) -> Matrix {
        let d = binomial(self.n(), r);
        Matrix::identity(self.p, d).scale(self.p.reduce(self.m as i64 - r as i64))
    }

    fn operator_matrix(&self, kind: OperatorKind, r: usize) -> Matrix {
        match kind {
            OperatorKind::XMinus => self.x_minus_matrix(r),
            OperatorKind::XPlus => self.x_plus_matrix(r),
            OperatorKind::H => self.h_matrix(r),
        }
    }

    pub fn operator_report(&self, kind: OperatorKind, r: i64) -> Result<OperatorReport> {
        let r = self.check_degree(r)?;
        let matrix = self.operator_matrix(kind, r);
        let kernel = matrix.kernel();
        let rank = matrix.cols() - kernel.dim();
        let kernel = kernel
            .basis_vectors()
            .iter()
            .map(|v| Multivector::from_coords(self.p, self.n(), r, v).map(|mv| mv.to_expr()))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorReport {
            p: self.p.get(),
            m: self.m,
            r,
            operator: kind,
            sigma: SIGMA,
            source_dim: matrix.cols(),
            target_dim: matrix.rows(),
            rank,
            corank: matrix.rows() - rank,
            kernel,
            matrix,
        })
    }

    /// Checks the three bracket relations as matrix identities on every `Λʳ`.
    pub fn sl2_check(&self) -> Sl2Report {
        let degrees: Vec<DegreeCheck> = (0..=self.n())
            .into_par_iter()
            .map(|r| self.check_degree_brackets(r, SIGMA))
            .collect();
        Sl2Report {
            p: self.p.get(),
            m: self.m,
            sigma: SIGMA,
            ok: degrees.iter().all(DegreeCheck::ok),
            degrees,
        }
    }

    pub(crate) fn check_degree_brackets(&self, r: usize, sigma: i64) -> DegreeCheck {
        let xp = |k: usize| self.x_plus_matrix_signed(k, sigma);
        let xm = |k: usize| self.x_minus_matrix(k);
        let h = |k: usize| self.h_matrix(k);
        let mul = |a: &Matrix, b: &Matrix| a.mul(b).expect("composable");
        let sub = |a: &Matrix, b: &Matrix| a.sub(b).expect("same shape");

        // X₊X₋ − X₋X₊ on Λʳ; the second product is empty below degree 2
        let up_down = mul(&xp(r + 2), &xm(r));
        let down_up = if r >= 2 {
            mul(&xm(r - 2), &xp(r))
        } else {
            Matrix::zeros(self.p, up_down.rows(), up_down.cols())
        };
        let xplus_xminus = sub(&up_down, &down_up) == h(r).scale(self.p.neg(1));

        let h_xplus = if r >= 2 {
            sub(&mul(&h(r - 2), &xp(r)), &mul(&xp(r), &h(r))) == xp(r).scale(2 % self.p.get())
        } else {
            true
        };
        let h_xminus = sub(&mul(&h(r + 2), &xm(r)), &mul(&xm(r), &h(r))) == xm(r).scale(self.p.reduce(-2));
        DegreeCheck {
            r,
            xplus_xminus,
            h_xplus,
            h_xminus,
        }
    }

    /// Whether `X₋ᵏ` vanishes on every graded piece.
    pub fn x_minus_power_vanishes(&self, k: usize) -> bool {
        (0..=self.n()).into_par_iter().all(|r| {
            let mut acc = Matrix::identity(self.p, binomial(self.n(), r));
            for step in 0..k {
                acc = self.x_minus_matrix(r + 2 * step).mul(&acc).expect("composable");
                if acc.is_zero() {
                    return true;
                }
            }
            acc.is_zero()
        })
    }
}

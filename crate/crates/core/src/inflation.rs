//! Degreewise bounds on the kernel of inflation `Λ*E^∨ → H*_s(G)`.
//!
//! The kernel itself is not computed. In each degree it is squeezed between
//! two computable spaces: the ideal `⟨ω⟩_r = Γ ∧ Λ^{r−2}` from below, and
//! `T_r`, the classes restricting to zero on every totally isotropic
//! subspace, from above. When the two agree the kernel is determined.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{binomial, mono_unrank, monomials, pullback_matrix, wedge_of_rows, Monomial, Multivector};
use crate::linalg::{all_vectors, Matrix, SpanAccumulator, Subspace};
use crate::symplectic::SymplecticSpace;

/// Attached to every certificate report.
pub const CERTIFICATE_NOTE: &str = "the membership test certifies the local condition at every g; \
     concluding that the class lies in the inflation kernel additionally needs stable rationality \
     of the corresponding quotient variety, which is not computed here";

/// `ideal_r ⊆ K_r ⊆ T_r` in one degree.
#[derive(Clone, Debug, Serialize)]
pub struct KernelSandwich {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    pub ambient_dim: usize,
    pub ideal_dim: usize,
    pub vanishing_dim: usize,
    pub ideal_contained: bool,
    /// `dim T_r − dim ideal_r`.
    pub gap: usize,
    /// Basis of `T_r` modulo the ideal, written on standard monomials.
    #[serde(serialize_with = "exprs")]
    pub gap_representatives: Vec<Multivector>,
    #[serde(skip)]
    pub ideal: Subspace,
    #[serde(skip)]
    pub vanishing: Subspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub p: u32,
    pub m: usize,
    /// Gaps are required to vanish only when p > m.
    pub asserted: bool,
    pub all_gaps_zero: bool,
    pub ok: bool,
    pub degrees: Vec<KernelSandwich>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub r: usize,
    #[serde(serialize_with = "expr")]
    pub representative: Multivector,
    pub in_vanishing_space: bool,
    pub in_ideal: bool,
}

/// Outcome of the membership test at one nonzero `g`.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateRecord {
    pub g: Vec<u32>,
    pub dim_s: usize,
    pub dim_rad: usize,
    pub dim_a: usize,
    /// The class already restricts to zero on `S_g`.
    pub restriction_zero: bool,
    pub member: bool,
    /// Coefficients of `ω|S ∧ μ` for the degree `d−2` monomials `μ` on `S_g`,
    /// in colex order.
    pub omega_coeffs: Vec<u32>,
    /// Coefficients of the wedges of d-subsets of the annihilator basis, in
    /// colex order.
    pub annihilator_coeffs: Vec<u32>,
    /// The witness reassembles the restriction exactly.
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub p: u32,
    pub m: usize,
    #[serde(serialize_with = "expr")]
    pub class: Multivector,
    pub degree: usize,
    pub overall: bool,
    pub records: Vec<CertificateRecord>,
    pub note: &'static str,
}

fn expr<S: serde::Serializer>(mv: &Multivector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(mv)
}

fn exprs<S: serde::Serializer>(v: &[Multivector], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|m| m.to_string()))
}

/// Inclusion `span(rows of basis) → V` as a `n × k` matrix.
fn inclusion(sub: &Subspace) -> Matrix {
    sub.basis().transpose()
}

impl SymplecticSpace {
    /// `⟨ω⟩_r = X₋(Λ^{r−2})`.
    pub fn ideal_component(&self, r: i64) -> Result<Subspace> {
        let r = self.check_degree(r)?;
        Ok(self.x_minus_image(r))
    }

    /// Monomials on the non-pivot columns of the ideal's rref: a complement
    /// of `⟨ω⟩_r` in `Λʳ`.
    pub fn quotient_basis(&self, r: i64) -> Result<Vec<Monomial>> {
        let ideal = self.ideal_component(r)?;
        let r = r as usize;
        let pivots = ideal.pivots();
        (0..binomial(self.n(), r))
            .filter(|c| pivots.binary_search(c).is_err())
            .map(|c| mono_unrank(c, r, self.n()))
            .collect()
    }

    pub fn monomial_expr(&self, mono: Monomial) -> String {
        Multivector::monomial(self.p(), self.n(), mono, 1).to_expr()
    }

    /// Functionals on `Λʳ` given by restriction to the isotropic subspaces of
    /// dimension `d`, accumulated into one span.
    fn restriction_functionals(&self, r: usize, d: usize, acc: SpanAccumulator) -> Result<SpanAccumulator> {
        if r > d {
            return Ok(acc);
        }
        let (p, n) = (self.p(), self.n());
        let dim = binomial(n, r);
        let found = self.fold_isotropic(
            d,
            || SpanAccumulator::new(p, dim),
            |mut acc, rows| {
                if !acc.is_full() {
                    let f = Matrix::from_reduced_rows(p, n, rows).expect("row width").transpose();
                    let pb = pullback_matrix(&f, r as i64).expect("nonnegative degree");
                    for i in 0..pb.rows() {
                        acc.push(pb.row(i));
                    }
                }
                acc
            },
            SpanAccumulator::merge,
        )?;
        Ok(acc.merge(found))
    }

    /// `T_r`: classes whose restriction to every Lagrangian vanishes. Every
    /// isotropic subspace lies in a Lagrangian, so this is the same as
    /// vanishing on all isotropic subspaces.
    pub fn vanishing_space(&self, r: i64) -> Result<Subspace> {
        let r = self.check_degree(r)?;
        let dim = binomial(self.n(), r);
        let acc = self.restriction_functionals(r, self.m(), SpanAccumulator::new(self.p(), dim))?;
        Ok(acc.into_subspace().basis().kernel())
    }

    /// `T_r` computed from isotropic subspaces of every dimension.
    pub fn vanishing_space_all_isotropic(&self, r: i64) -> Result<Subspace> {
        let r = self.check_degree(r)?;
        let mut acc = SpanAccumulator::new(self.p(), binomial(self.n(), r));
        for d in 0..=self.m() {
            acc = self.restriction_functionals(r, d, acc)?;
        }
        Ok(acc.into_subspace().basis().kernel())
    }

    pub fn kernel_sandwich(&self, r: i64) -> Result<KernelSandwich> {
        let r = self.check_degree(r)?;
        let ideal = self.ideal_component(r as i64)?;
        let vanishing = self.vanishing_space(r as i64)?;
        let ideal_contained = ideal.is_subspace_of(&vanishing)?;
        let mut gap = SpanAccumulator::new(self.p(), ideal.ambient_dim());
        for v in vanishing.basis_vectors() {
            gap.push(&ideal.reduce(&v)?);
        }
        let gap = gap.into_subspace();
        let gap_representatives = gap
            .basis_vectors()
            .iter()
            .map(|v| Multivector::from_coords(self.p(), self.n(), r, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelSandwich {
            p: self.p().get(),
            m: self.m(),
            r,
            ambient_dim: ideal.ambient_dim(),
            ideal_dim: ideal.dim(),
            vanishing_dim: vanishing.dim(),
            ideal_contained,
            gap: vanishing.dim().saturating_sub(ideal.dim()),
            gap_representatives,
            ideal,
            vanishing,
        })
    }

    /// Sandwiches in every degree `0..=2m`; when p > m every gap must vanish.
    pub fn theorem1_verify(&self) -> Result<Theorem1Report> {
        let degrees = (0..=self.n() as i64)
            .map(|r| self.kernel_sandwich(r))
            .collect::<Result<Vec<_>>>()?;
        let asserted = self.p().get() as usize > self.m();
        let all_gaps_zero = degrees.iter().all(|d| d.gap == 0);
        let contained = degrees.iter().all(|d| d.ideal_contained);
        Ok(Theorem1Report {
            p: self.p().get(),
            m: self.m(),
            asserted,
            all_gaps_zero,
            ok: contained && (!asserted || all_gaps_zero),
            degrees,
        })
    }

    /// Lowest-degree class vanishing on all isotropic subspaces but outside
    /// `⟨ω⟩`, written on standard monomials.
    pub fn counterexample(&self) -> Result<Option<Counterexample>> {
        for r in 0..=self.n() as i64 {
            let s = self.kernel_sandwich(r)?;
            if let Some(rep) = s.gap_representatives.first() {
                let c = rep.coords(s.r);
                return Ok(Some(Counterexample {
                    r: s.r,
                    representative: rep.clone(),
                    in_vanishing_space: s.vanishing.contains(&c)?,
                    in_ideal: s.ideal.contains(&c)?,
                }));
            }
        }
        Ok(None)
    }

    /// Pullback of a homogeneous class to `sub`, in coordinates dual to the
    /// rref basis of `sub`.
    pub fn restrict(&self, class: &Multivector, sub: &Subspace) -> Result<Multivector> {
        self.check(class)?;
        if sub.ambient_dim() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: sub.ambient_dim(),
            });
        }
        let k = sub.dim();
        let f = inclusion(sub);
        let mut out = Multivector::zero(self.p(), k);
        for r in class.degrees() {
            let coords = pullback_matrix(&f, r as i64)?.mul_vec(&class.coords(r))?;
            out = &out + &Multivector::from_coords(self.p(), k, r, &coords)?;
        }
        Ok(out)
    }

    /// Tests, for every nonzero g, whether the restriction of `zeta` to
    /// `S_g = g^⊥` lies in `ω|S ∧ Λ^{d−2}(S^∨) + Λ^d(ann g)`.
    pub fn certificate(&self, zeta: &Multivector) -> Result<CertificateReport> {
        self.check(zeta)?;
        let degree = zeta.homogeneous_degree()?.unwrap_or(0);
        let vectors: Vec<Vec<u32>> = all_vectors(self.p(), self.n()).skip(1).collect();
        let records = vectors
            .par_iter()
            .map(|g| self.certificate_record(zeta, degree, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(CertificateReport {
            p: self.p().get(),
            m: self.m(),
            class: zeta.clone(),
            degree,
            overall: records.iter().all(|r| r.member && r.verified),
            records,
            note: CERTIFICATE_NOTE,
        })
    }

    fn certificate_record(&self, zeta: &Multivector, d: usize, g: &[u32]) -> Result<CertificateRecord> {
        let p = self.p();
        let s = self.perp(g)?;
        let split = self.radical_split(&s)?;
        let k = s.dim();
        let restricted = self.restrict(zeta, &s)?;
        let mut record = CertificateRecord {
            g: g.to_vec(),
            dim_s: k,
            dim_rad: split.rad.dim(),
            dim_a: split.a.dim(),
            restriction_zero: restricted.is_zero(),
            member: true,
            omega_coeffs: Vec::new(),
            annihilator_coeffs: Vec::new(),
            verified: true,
        };
        if restricted.is_zero() {
            return Ok(record);
        }

        let omega_s = self.restrict(&self.gamma(), &s)?;
        let lower: Vec<Multivector> = if d >= 2 {
            monomials(k, d - 2).map(|mono| Multivector::monomial(p, k, mono, 1)).collect()
        } else {
            Vec::new()
        };
        let from_omega: Vec<Multivector> = lower.iter().map(|mu| omega_s.wedge(mu)).collect::<Result<_>>()?;

        let ann = self.annihilator(&s, g)?;
        let ann_forms: Vec<Multivector> = ann.basis_vectors().iter().map(|v| Multivector::from_vector(p, v)).collect();
        let subsets: Vec<Vec<usize>> = monomials(ann.dim(), d).map(|m| m.indices()).collect();
        let from_ann: Vec<Vec<u32>> = subsets
            .iter()
            .map(|idx| wedge_of_rows(&ann.basis().select(idx, &(0..k).collect::<Vec<_>>())))
            .collect();

        let width = binomial(k, d);
        let mut rows: Vec<Vec<u32>> = from_omega.iter().map(|f| f.coords(d)).collect();
        rows.extend(from_ann.iter().cloned());
        let gens = Matrix::from_reduced_rows(p, width, &rows)?;
        let Some(coeffs) = gens.solve_row_combination(&restricted.coords(d))? else {
            record.member = false;
            record.verified = false;
            return Ok(record);
        };
        let (oc, ac) = coeffs.split_at(from_omega.len());

        // independent reassembly through multivector wedges
        let mut rebuilt = Multivector::zero(p, k);
        for (f, &c) in from_omega.iter().zip(oc) {
            rebuilt = &rebuilt + &f.scale(c);
        }
        for (idx, &c) in subsets.iter().zip(ac) {
            let w = idx
                .iter()
                .try_fold(Multivector::one(p, k), |acc, &i| acc.wedge(&ann_forms[i]))?;
            rebuilt = &rebuilt + &w.scale(c);
        }
        record.omega_coeffs = oc.to_vec();
        record.annihilator_coeffs = ac.to_vec();
        record.verified = rebuilt == restricted;
        Ok(record)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: u64, m: usize) -> SymplecticSpace {
        SymplecticSpace::with(p, m).unwrap()
    }

    #[test]
    fn ideal_components() {
        let s = space(3, 2);
        assert!(s.ideal_component(1).unwrap().is_zero());
        let i2 = s.ideal_component(2).unwrap();
        assert_eq!(i2.dim(), 1);
        assert!(i2.contains(&s.gamma().coords(2)).unwrap());
        let t = space(2, 3);
        let i4 = t.ideal_component(4).unwrap();
        assert_eq!((i4.dim(), i4.ambient_dim()), (14, 15));
        assert!(t.ideal_component(7).is_err());
    }

    #[test]
    fn quotient_bases() {
        let t = space(2, 3);
        let q = t.quotient_basis(4).unwrap();
        assert_eq!(q.iter().map(|&m| t.monomial_expr(m)).collect::<Vec<_>>(), ["x2^x3^y2^y3"]);
        let zeta = t.parse("x2^x3^y2^y3").unwrap();
        assert!(!t.ideal_component(4).unwrap().contains(&zeta.coords(4)).unwrap());
        assert_eq!(t.quotient_basis(0).unwrap(), vec![Monomial::ONE]);
        assert!(space(3, 2).quotient_basis(4).unwrap().is_empty());
    }

    #[test]
    fn vanishing_spaces() {
        let t = space(2, 3);
        let t2 = t.vanishing_space(2).unwrap();
        assert_eq!(t2.dim(), 1);
        assert!(t2.contains(&t.gamma().coords(2)).unwrap());
        assert!(t.vanishing_space(4).unwrap().is_full());
        let s = space(3, 2);
        assert_eq!(s.vanishing_space(2).unwrap(), s.ideal_component(2).unwrap());
    }

    #[test]
    fn lagrangians_suffice() {
        for (p, m) in [(2, 2), (3, 2), (2, 3)] {
            let s = space(p, m);
            for r in 0..=2 * m as i64 {
                assert_eq!(s.vanishing_space(r).unwrap(), s.vanishing_space_all_isotropic(r).unwrap());
            }
        }
    }

    #[test]
    fn theorem1_examples() {
        for (p, m) in [(3, 2), (5, 2)] {
            let rep = space(p, m).theorem1_verify().unwrap();
            assert!(rep.asserted && rep.ok);
        }
        let rep = space(2, 3).theorem1_verify().unwrap();
        let gaps: Vec<usize> = rep.degrees.iter().map(|d| d.gap).collect();
        assert_eq!(&gaps[..3], &[0, 0, 0]);
        assert_eq!(gaps[4], 1);
        assert!(!rep.asserted && rep.ok);
    }

    #[test]
    fn counterexamples() {
        let ce = space(2, 3).counterexample().unwrap().unwrap();
        assert_eq!(ce.r, 4);
        assert_eq!(ce.representative.to_expr(), "x2^x3^y2^y3");
        assert!(ce.in_vanishing_space && !ce.in_ideal);
        assert!(space(3, 2).counterexample().unwrap().is_none());
        assert!(space(2, 1).counterexample().unwrap().is_none());
    }

    #[test]
    fn certificate_for_zeta() {
        let t = space(2, 3);
        let rep = t.certificate(&t.parse("x2^x3^y2^y3").unwrap()).unwrap();
        assert_eq!(rep.records.len(), 63);
        assert!(rep.overall);
        for r in &rep.records {
            assert_eq!((r.dim_s, r.dim_rad, r.dim_a), (5, 1, 4));
            assert!(r.member && r.verified);
        }
        assert_eq!(rep.records[31].g, vec![1, 0, 0, 0, 0, 0]);
        let zero = t.certificate(&t.zero()).unwrap();
        assert!(zero.overall && zero.records.iter().all(|r| r.restriction_zero));
    }

    #[test]
    fn restriction_to_coordinate_planes() {
        let t = space(3, 2);
        let plane = Subspace::from_vectors(t.p(), 4, &[[1, 0, 0, 0], [0, 0, 1, 0]]).unwrap();
        let r = t.restrict(&t.gamma(), &plane).unwrap();
        assert_eq!(r.to_plain_expr(), "e1^e2");
        let lag = Subspace::from_vectors(t.p(), 4, &[[1, 0, 0, 0], [0, 1, 0, 0]]).unwrap();
        assert!(t.restrict(&t.gamma(), &lag).unwrap().is_zero());
    }
}

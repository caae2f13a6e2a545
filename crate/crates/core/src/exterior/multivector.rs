use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::grammar::{self, VariableOrder};
use super::monomial::{binomial, mono_unrank, monomials, rank_unchecked, Monomial, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Prime};

/// An element of the exterior algebra on `n` generators over F_p, stored as a
/// sparse map from monomials to nonzero coefficients. Degrees may be mixed.
///
/// When `n = 2m` the generators are named `x1..xm, y1..ym` in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    n: usize,
    p: Prime,
    terms: BTreeMap<Monomial, u32>,
}

impl Multivector {
    /// Zero in the exterior algebra on `n` generators.
    pub fn zero(p: Prime, n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Multivector {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: Prime, n: usize) -> Self {
        Multivector::monomial(p, n, Monomial::ONE, 1)
    }

    pub fn monomial(p: Prime, n: usize, mono: Monomial, coeff: i64) -> Self {
        assert!(mono.span() <= n, "monomial uses a generator beyond n = {n}");
        let mut mv = Multivector::zero(p, n);
        mv.add_term(mono, p.reduce(coeff));
        mv
    }

    pub fn generator(p: Prime, n: usize, i: usize) -> Self {
        Multivector::monomial(p, n, Monomial::generator(i), 1)
    }

    /// Degree-`r` element from dense coordinates over the colex basis.
    pub fn from_coords(p: Prime, n: usize, r: usize, coords: &[u32]) -> Result<Self> {
        if coords.len() != binomial(n, r) {
            return Err(Error::DimensionMismatch {
                expected: binomial(n, r),
                found: coords.len(),
            });
        }
        let mut mv = Multivector::zero(p, n);
        for (mono, &c) in monomials(n, r).zip(coords) {
            mv.add_term(mono, c % p.get());
        }
        Ok(mv)
    }

    /// Degree-1 element `sum_i v[i] e_i`.
    pub fn from_vector(p: Prime, v: &[u32]) -> Self {
        Multivector::from_coords(p, v.len(), 1, v).expect("length matches")
    }

    pub fn parse(text: &str, p: Prime, m: usize) -> Result<Self> {
        grammar::parse(text, p, m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the number of generators; only meaningful for symplectic spaces.
    pub fn m(&self) -> usize {
        self.n / 2
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Monomial) -> u32 {
        self.terms.get(&mono).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(mono).or_insert(0);
        *entry = p.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&mono);
        }
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    /// `Ok(None)` for zero, `Ok(Some(r))` for a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        let degrees = self.degrees();
        match degrees.len() {
            0 => Ok(None),
            1 => Ok(degrees.into_iter().next()),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Degree-`r` component.
    pub fn component(&self, r: usize) -> Multivector {
        Multivector {
            n: self.n,
            p: self.p,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == r).map(|(&m, &c)| (m, c)).collect(),
        }
    }

    /// Dense coordinates of the degree-`r` component over the colex basis.
    pub fn coords(&self, r: usize) -> Vec<u32> {
        let mut v = vec![0u32; binomial(self.n, r)];
        for (&mono, &c) in &self.terms {
            if mono.degree() == r {
                v[rank_unchecked(mono)] = c;
            }
        }
        v
    }

    pub fn scale(&self, c: u32) -> Multivector {
        let mut out = Multivector::zero(self.p, self.n);
        for (&m, &a) in &self.terms {
            out.add_term(m, self.p.mul(a, c));
        }
        out
    }

    fn check_compatible(&self, other: &Multivector) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        if self.n != other.n {
            return Err(Error::RankMismatch {
                left: self.n / 2,
                right: other.n / 2,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let p = self.p;
        let mut out = Multivector::zero(p, self.n);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                if let Some((mono, negative)) = a.wedge(b) {
                    let c = p.mul(ca, cb);
                    out.add_term(mono, if negative { p.neg(c) } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Printed form using the `x`/`y` names (requires an even number of
    /// generators).
    pub fn to_expr(&self) -> String {
        grammar::print(self, &VariableOrder::new(self.n / 2))
    }

    /// Printed form with generators named `e1..en`, for forms on spaces that
    /// carry no symplectic naming.
    pub fn to_plain_expr(&self) -> String {
        grammar::print_with(self, |i| format!("e{}", i + 1))
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n % 2 == 0 {
            f.write_str(&self.to_expr())
        } else {
            f.write_str(&self.to_plain_expr())
        }
    }
}

/// Panics on mismatched spaces; use [`Multivector::checked_add`] otherwise.
impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.checked_add(rhs).expect("adding multivectors from different spaces")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(self.p.neg(1))
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

/// Matrix of `β ↦ a ∧ β` from degree `r` to degree `r + deg a` in the colex
/// bases (`a` must be homogeneous).
pub fn left_multiplication_matrix(a: &Multivector, r: usize) -> Result<Matrix> {
    let n = a.n;
    let p = a.p;
    let da = a.homogeneous_degree()?.unwrap_or(0);
    let mut out = Matrix::zeros(p, binomial(n, r + da), binomial(n, r));
    for (col, mono) in monomials(n, r).enumerate() {
        for (&am, &c) in &a.terms {
            if let Some((prod, negative)) = am.wedge(mono) {
                let row = rank_unchecked(prod);
                let v = if negative { p.neg(c) } else { c };
                out.set(row, col, p.add(out.get(row, col), v));
            }
        }
    }
    Ok(out)
}

/// JSON form: `{"p":…, "m":…, "terms":[{"mono":["x2","x3"],"coeff":1}, …]}`.
#[derive(Serialize, Deserialize)]
struct MultivectorJson {
    p: Prime,
    m: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mono: Vec<String>,
    coeff: i64,
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let order = VariableOrder::new(self.n / 2);
        MultivectorJson {
            p: self.p,
            m: self.n / 2,
            terms: self
                .terms
                .iter()
                .map(|(mono, &c)| TermJson {
                    mono: mono.indices().into_iter().map(|i| order.name(i)).collect(),
                    coeff: c as i64,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MultivectorJson::deserialize(d)?;
        let order = VariableOrder::new(raw.m);
        let mut out = Multivector::zero(raw.p, 2 * raw.m);
        for t in raw.terms {
            let mut term = Multivector::one(raw.p, 2 * raw.m).scale(raw.p.reduce(t.coeff));
            for name in &t.mono {
                let i = order.index_of(name).ok_or_else(|| D::Error::custom(format!("unknown variable {name}")))?;
                term = term.wedge(&Multivector::generator(raw.p, 2 * raw.m, i)).map_err(D::Error::custom)?;
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Unranks a degree-`r` coordinate index into its monomial.
pub fn basis_monomial(n: usize, r: usize, index: usize) -> Result<Monomial> {
    mono_unrank(index, r, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn var(pp: Prime, i: usize) -> Multivector {
        Multivector::generator(pp, 6, i)
    }

    #[test]
    fn alternating_and_antisymmetric() {
        let f3 = p(3);
        let (x1, x2) = (var(f3, 0), var(f3, 1));
        assert!(x1.wedge(&x1).unwrap().is_zero());
        assert_eq!(x2.wedge(&x1).unwrap(), -&x1.wedge(&x2).unwrap());
        let f2 = p(2);
        assert_eq!(var(f2, 1).wedge(&var(f2, 0)).unwrap(), var(f2, 0).wedge(&var(f2, 1)).unwrap());
    }

    #[test]
    fn bilinear_expansion_over_f3() {
        // (x1 + y1) ∧ x1 = y1 ∧ x1 = -(x1 ∧ y1)
        let f3 = p(3);
        let (x1, y1) = (var(f3, 0), var(f3, 3));
        let lhs = (&x1 + &y1).wedge(&x1).unwrap();
        assert_eq!(lhs, -&x1.wedge(&y1).unwrap());
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = Multivector::one(p(3), 4);
        assert!(a.wedge(&Multivector::one(p(3), 6)).is_err());
        assert!(a.wedge(&Multivector::one(p(5), 4)).is_err());
    }

    #[test]
    fn homogeneity() {
        let f5 = p(5);
        let a = &Multivector::one(f5, 4) + &Multivector::generator(f5, 4, 1);
        assert_eq!(a.homogeneous_degree(), Err(Error::NotHomogeneous));
        assert_eq!(Multivector::zero(f5, 4).homogeneous_degree(), Ok(None));
        assert_eq!(a.component(1).homogeneous_degree(), Ok(Some(1)));
    }

    #[test]
    fn coordinates_round_trip() {
        let f7 = p(7);
        let coords: Vec<u32> = (0..15).map(|i| (i * 3 % 7) as u32).collect();
        let mv = Multivector::from_coords(f7, 6, 2, &coords).unwrap();
        assert_eq!(mv.coords(2), coords);
    }

    #[test]
    fn left_multiplication_matches_wedge() {
        let f5 = p(5);
        let a = &(&var(f5, 0).wedge(&var(f5, 3)).unwrap() + &var(f5, 1).wedge(&var(f5, 4)).unwrap())
            + &var(f5, 2).wedge(&var(f5, 5)).unwrap().scale(3);
        let lm = left_multiplication_matrix(&a, 1).unwrap();
        for (k, mono) in monomials(6, 1).enumerate() {
            let direct = a.wedge(&Multivector::monomial(f5, 6, mono, 1)).unwrap();
            assert_eq!(lm.column(k), direct.coords(3));
        }
    }

    #[test]
    fn json_shape() {
        let f2 = p(2);
        let z = var(f2, 1).wedge(&var(f2, 2)).unwrap().wedge(&var(f2, 4)).unwrap().wedge(&var(f2, 5)).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"p":2,"m":3,"terms":[{"mono":["x2","x3","y2","y3"],"coeff":1}]}"#);
        let back: Multivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }

    fn homogeneous(pp: u64, n: usize, r: usize) -> impl Strategy<Value = Multivector> {
        proptest::collection::vec(0u32..pp as u32, binomial(n, r))
            .prop_map(move |c| Multivector::from_coords(Prime::new(pp).unwrap(), n, r, &c).unwrap())
    }

    fn any_mv(pp: u64, n: usize) -> impl Strategy<Value = Multivector> {
        proptest::collection::vec((0u64..1 << n, 1u32..pp as u32), 0..8).prop_map(move |terms| {
            let f = Prime::new(pp).unwrap();
            let mut mv = Multivector::zero(f, n);
            for (bits, c) in terms {
                mv.add_term(Monomial::from_bits(bits), c);
            }
            mv
        })
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(s in 0usize..4, t in 0usize..4, seed in any::<u64>()) {
            let f = p(5);
            let a_coords: Vec<u32> = (0..binomial(6, s)).map(|i| ((seed >> (i % 60)) as u32 + i as u32) % 5).collect();
            let b_coords: Vec<u32> = (0..binomial(6, t)).map(|i| ((seed >> ((i + 7) % 60)) as u32 ^ 3) % 5).collect();
            let a = Multivector::from_coords(f, 6, s, &a_coords).unwrap();
            let b = Multivector::from_coords(f, 6, t, &b_coords).unwrap();
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            if (s * t) % 2 == 0 { prop_assert_eq!(ab, ba); } else { prop_assert_eq!(ab, -&ba); }
        }

        #[test]
        fn associativity(a in any_mv(3, 6), b in any_mv(3, 6), c in any_mv(3, 6)) {
            prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
        }

        #[test]
        fn vectors_square_to_zero(v in homogeneous(2, 6, 1), w in homogeneous(7, 6, 1)) {
            prop_assert!(v.wedge(&v).unwrap().is_zero());
            prop_assert!(w.wedge(&w).unwrap().is_zero());
        }
    }
}

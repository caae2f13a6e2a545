//! An extraspecial group of order `p^{1+2m}` realized as `F_p × F_p^{2m}`
//! with product `(z, u)(z', v) = (z + z' + β(u, v), u + v)` and
//! `β(u, v) = Σ u_xᵢ v_yᵢ`. Since `β(u, v) − β(v, u) = ω(u, v)`, the
//! commutator of two lifts is `(ω(u, v), 0)`.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix, Prime, SpanAccumulator, Subspace};
use crate::symplectic::SymplecticSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtraspecialElement {
    pub z: u32,
    pub v: Vec<u32>,
}

impl fmt::Display for ExtraspecialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(u32::to_string).collect();
        write!(f, "({}; {})", self.z, v.join(","))
    }
}

impl Serialize for ExtraspecialElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct ExtraspecialGroup {
    space: SymplecticSpace,
}

/// Which of the two groups of this order the construction gives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupType {
    pub p: u32,
    pub m: usize,
    /// `"+"` or `"-"`.
    #[serde(rename = "type")]
    pub kind: String,
    /// `"arf"` for p = 2 (Arf invariant of `v ↦ β(v, v)`), `"exponent"` otherwise.
    pub invariant: String,
    pub value: u64,
}

pub fn make_group(p: u64, m: usize) -> Result<ExtraspecialGroup> {
    Ok(ExtraspecialGroup::new(SymplecticSpace::with(p, m)?))
}

impl ExtraspecialGroup {
    pub fn new(space: SymplecticSpace) -> Self {
        let g = ExtraspecialGroup { space };
        for i in 0..g.n() {
            for j in 0..g.n() {
                let (ei, ej) = (g.unit(i), g.unit(j));
                let p = g.p();
                debug_assert_eq!(p.sub(g.beta(&ei, &ej), g.beta(&ej, &ei)), g.space.omega(&ei, &ej));
            }
        }
        g
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn p(&self) -> Prime {
        self.space.p()
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    fn n(&self) -> usize {
        self.space.n()
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.n()];
        v[i] = 1;
        v
    }

    /// `β(u, v) = Σ u_xᵢ v_yᵢ`.
    pub fn beta(&self, u: &[u32], v: &[u32]) -> u32 {
        let p = self.p();
        let m = self.m();
        (0..m).fold(0, |acc, i| p.add(acc, p.mul(u[i], v[m + i])))
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p().get()).pow(1 + self.n() as u32)
    }

    pub fn identity(&self) -> ExtraspecialElement {
        ExtraspecialElement {
            z: 0,
            v: vec![0; self.n()],
        }
    }

    pub fn element(&self, z: i64, v: &[i64]) -> Result<ExtraspecialElement> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        let p = self.p();
        Ok(ExtraspecialElement {
            z: p.reduce(z),
            v: v.iter().map(|&x| p.reduce(x)).collect(),
        })
    }

    pub fn mul(&self, a: &ExtraspecialElement, b: &ExtraspecialElement) -> ExtraspecialElement {
        let p = self.p();
        ExtraspecialElement {
            z: p.add(p.add(a.z, b.z), self.beta(&a.v, &b.v)),
            v: a.v.iter().zip(&b.v).map(|(&x, &y)| p.add(x, y)).collect(),
        }
    }

    /// `(z, u)⁻¹ = (−z + β(u, u), −u)`.
    pub fn inverse(&self, a: &ExtraspecialElement) -> ExtraspecialElement {
        let p = self.p();
        ExtraspecialElement {
            z: p.add(p.neg(a.z), self.beta(&a.v, &a.v)),
            v: a.v.iter().map(|&x| p.neg(x)).collect(),
        }
    }

    pub fn pow(&self, a: &ExtraspecialElement, k: u64) -> ExtraspecialElement {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, a))
    }

    pub fn element_order(&self, a: &ExtraspecialElement) -> u64 {
        let id = self.identity();
        let mut x = a.clone();
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &ExtraspecialElement, b: &ExtraspecialElement) -> ExtraspecialElement {
        let ab = self.mul(a, b);
        let ai_bi = self.mul(&self.inverse(a), &self.inverse(b));
        self.mul(&ab, &ai_bi)
    }

    /// Every element; only sensible for small groups.
    pub fn elements(&self) -> impl Iterator<Item = ExtraspecialElement> + '_ {
        let p = self.p();
        (0..p.get()).flat_map(move |z| all_vectors(p, self.n()).map(move |v| ExtraspecialElement { z, v }))
    }

    fn lifts(&self, v: &[u32]) -> impl Iterator<Item = ExtraspecialElement> + '_ {
        let v = v.to_vec();
        (0..self.p().get()).map(move |z| ExtraspecialElement { z, v: v.clone() })
    }

    /// Elements commuting with every generator, found by scanning the group.
    pub fn center(&self) -> Vec<ExtraspecialElement> {
        let gens: Vec<ExtraspecialElement> = (0..self.n())
            .map(|i| ExtraspecialElement { z: 0, v: self.unit(i) })
            .collect();
        let center: Vec<ExtraspecialElement> = self
            .elements()
            .filter(|g| gens.iter().all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect();
        assert_eq!(center.len(), self.p().get() as usize, "center is not of order p");
        assert!(center.iter().all(|c| c.v.iter().all(|&x| x == 0)));
        center
    }

    /// Matrix of `(eᵢ, eⱼ) ↦ z-part of [ẽᵢ, ẽⱼ]`.
    pub fn commutator_form(&self) -> Matrix {
        Matrix::from_fn(self.p(), self.n(), self.n(), |i, j| {
            let a = ExtraspecialElement { z: 0, v: self.unit(i) };
            let b = ExtraspecialElement { z: 0, v: self.unit(j) };
            let c = self.commutator(&a, &b);
            debug_assert!(c.v.iter().all(|&x| x == 0), "commutator not central");
            c.z as i64
        })
    }

    /// `π(Z(g̃))`, found by testing which `h ∈ E` have a lift commuting with `g̃`.
    pub fn centralizer_image(&self, g: &ExtraspecialElement) -> Subspace {
        let mut acc = SpanAccumulator::new(self.p(), self.n());
        let id = self.identity();
        for v in all_vectors(self.p(), self.n()) {
            let h = ExtraspecialElement { z: 0, v };
            if self.commutator(g, &h) == id {
                acc.push(&h.v);
            }
        }
        acc.into_subspace()
    }

    /// Whether `π⁻¹(A)` is abelian, checked pair by pair.
    pub fn abelian_preimage_check(&self, a: &Subspace) -> bool {
        let preimage: Vec<ExtraspecialElement> = a.elements().flat_map(|v| self.lifts(&v).collect::<Vec<_>>()).collect();
        preimage
            .iter()
            .all(|x| preimage.iter().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn group_type(&self) -> GroupType {
        let p = self.p();
        let (invariant, value, plus) = if p.get() == 2 {
            // Arf invariant: the value q takes on the majority of vectors
            let zeros = all_vectors(p, self.n()).filter(|v| self.beta(v, v) == 0).count() as u64;
            let arf = u64::from(2 * zeros < 1u64 << self.n());
            ("arf", arf, arf == 0)
        } else {
            let exponent = self
                .elements()
                .map(|g| self.element_order(&g))
                .max()
                .expect("nonempty group");
            ("exponent", exponent, exponent == p.get() as u64)
        };
        GroupType {
            p: p.get(),
            m: self.m(),
            kind: if plus { "+" } else { "-" }.to_string(),
            invariant: invariant.to_string(),
            value,
        }
    }

    /// For order 8: exactly two elements of order 4, and a presentation
    /// `⟨r, s | r⁴, s², srs⁻¹ = r⁻¹⟩` reaching all eight elements.
    pub fn is_dihedral_of_order_8(&self) -> bool {
        if self.order() != BigUint::from(8u32) {
            return false;
        }
        let all: Vec<ExtraspecialElement> = self.elements().collect();
        let order4: Vec<&ExtraspecialElement> = all.iter().filter(|g| self.element_order(g) == 4).collect();
        if order4.len() != 2 {
            return false;
        }
        let r = order4[0];
        let powers: Vec<ExtraspecialElement> = (0..4).map(|k| self.pow(r, k)).collect();
        all.iter().any(|s| {
            if self.element_order(s) != 2 || powers.contains(s) {
                return false;
            }
            let conj = self.mul(&self.mul(s, r), &self.inverse(s));
            if conj != self.inverse(r) {
                return false;
            }
            let mut generated: Vec<ExtraspecialElement> = powers
                .iter()
                .flat_map(|x| [x.clone(), self.mul(x, s)])
                .collect();
            generated.sort();
            generated.dedup();
            generated.len() == 8
        })
    }
}

//! Exact dense linear algebra over prime fields.
//!
//! Matrices carry their modulus; all entries are kept reduced in `[0, p)`.
//! Row reduction uses leftmost-column, topmost-row pivoting so that every
//! canonical basis produced downstream is reproducible. Over F_2 the
//! elimination runs on bit-packed rows (see [`gf2`]) and is required to agree
//! bit for bit with the generic path.

mod gf2;
mod matrix;
mod subspace;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use matrix::determinant_in_place as matrix_det;
pub use matrix::{Matrix, Rref};
pub use subspace::{SpanAccumulator, Subspace};

/// Deterministic primality test by trial division (moduli stay below 2^32).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Inverse by the extended Euclidean algorithm. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.0 != 0, "zero has no inverse in F_{}", self.0);
        let (mut r0, mut r1) = (self.0 as i64, (a % self.0) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.0 as i64) as u32
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    /// Signed representative: `+1 -> 1`, `-1 -> p - 1`.
    #[inline]
    pub fn sign(self, negative: bool) -> u32 {
        if negative {
            self.neg(1)
        } else {
            1 % self.0
        }
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = u64::deserialize(d)?;
        Prime::new(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: Prime,
}

impl Fp {
    pub fn new(value: i64, modulus: Prime) -> Self {
        Fp {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        Fp::new(1, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        (!self.is_zero()).then(|| Fp {
            value: self.modulus.inv(self.value),
            modulus: self.modulus,
        })
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn same_field(a: Fp, b: Fp) {
    assert_eq!(a.modulus, b.modulus, "mixed moduli in F_p arithmetic");
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        same_field(self, rhs);
        Fp {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        same_field(self, rhs);
        Fp {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        same_field(self, rhs);
        Fp {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

/// Enumerates all vectors of F_p^n in lexicographic coordinate order.
pub fn all_vectors(p: Prime, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p.get() as u64).checked_pow(n as u32).expect("vector space too large to enumerate");
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p.get() as u64) as u32;
            idx /= p.get() as u64;
        }
        v
    })
}

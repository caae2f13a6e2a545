use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Prime;

/// Irreducibility criterion for the primitive module `E_r` in characteristic p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PremetSuprunenko {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    #[serde(serialize_with = "crate::report::big")]
    pub product: BigUint,
    pub divisible: bool,
    /// `p > m − r/2 + 1`, which alone forces irreducibility.
    pub sufficient: bool,
    pub irreducible: bool,
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `∏ C(m − (r+j)/2 + 1, (r−j)/2)` over `0 ≤ j ≤ r`, `j ≡ r (mod 2)`; `E_r`
/// is irreducible iff p does not divide it.
pub fn premet_suprunenko(p: Prime, m: usize, r: usize) -> Result<PremetSuprunenko> {
    if r == 0 || r > m {
        return Err(Error::DegreeOutOfRange {
            degree: r as i64,
            min: 1,
            max: m as i64,
        });
    }
    let (m64, r64) = (m as u64, r as u64);
    let product = (0..=r64)
        .filter(|j| j % 2 == r64 % 2)
        .map(|j| binom(m64 + 1 - (r64 + j) / 2, (r64 - j) / 2))
        .product::<BigUint>();
    let divisible = (&product % p.get()) == BigUint::from(0u32);
    Ok(PremetSuprunenko {
        p: p.get(),
        m,
        r,
        product,
        divisible,
        sufficient: 2 * p.get() as u64 > 2 * m64 + 2 - r64,
        irreducible: !divisible,
    })
}

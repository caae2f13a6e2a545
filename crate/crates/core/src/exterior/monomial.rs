use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Maximum number of exterior generators (one bit each).
pub const MAX_GENERATORS: usize = 64;

/// A wedge monomial `e_{i1} ∧ … ∧ e_{ir}` with `i1 < … < ir`, stored as a bit
/// set. Bit order coincides with colexicographic order among monomials of the
/// same degree, so numeric comparison of the bits is colex comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    /// From a strictly increasing index list.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        let mut prev = None;
        for &i in indices {
            if i >= MAX_GENERATORS || prev.is_some_and(|q| q >= i) {
                return Err(Error::InvalidMonomial {
                    bound: MAX_GENERATORS,
                });
            }
            bits |= 1 << i;
            prev = Some(i);
        }
        Ok(Monomial(bits))
    }

    pub fn generator(i: usize) -> Self {
        assert!(i < MAX_GENERATORS);
        Monomial(1 << i)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Highest index plus one (0 for the unit monomial).
    pub fn span(self) -> usize {
        MAX_GENERATORS - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut b = self.0;
        while b != 0 {
            out.push(b.trailing_zeros() as usize);
            b &= b - 1;
        }
        out
    }

    pub fn without(self, i: usize) -> Self {
        Monomial(self.0 & !(1 << i))
    }

    /// `self ∧ other` as `(monomial, negative)`, or `None` when an index
    /// repeats. The sign is the parity of the inversions needed to merge the
    /// two sorted index lists.
    pub fn wedge(self, other: Monomial) -> Option<(Monomial, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            // indices of `self` above j must jump over this element of `other`
            let above = if j == 63 { 0 } else { self.0 >> (j + 1) };
            inversions += above.count_ones();
            b &= b - 1;
        }
        Some((Monomial(self.0 | other.0), inversions % 2 == 1))
    }
}

/// Degree first, then colex.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

/// Same as [`binomial`] but accepting signed arguments (negative -> 0).
pub fn binomial_signed(n: i64, k: i64) -> usize {
    if n < 0 || k < 0 {
        0
    } else {
        binomial(n as usize, k as usize)
    }
}

/// Colex rank of a degree-`r` monomial: `sum_i C(c_i, i + 1)`.
pub fn mono_rank(mono: Monomial, r: usize) -> Result<usize> {
    if mono.degree() != r {
        return Err(Error::DegreeOutOfRange {
            degree: mono.degree() as i64,
            min: r as i64,
            max: r as i64,
        });
    }
    Ok(rank_unchecked(mono))
}

#[inline]
pub(crate) fn rank_unchecked(mono: Monomial) -> usize {
    let mut b = mono.0;
    let mut i = 1;
    let mut rank = 0;
    while b != 0 {
        rank += binomial(b.trailing_zeros() as usize, i);
        i += 1;
        b &= b - 1;
    }
    rank
}

/// Inverse of [`mono_rank`] among degree-`r` monomials in `n` generators.
pub fn mono_unrank(index: usize, r: usize, n: usize) -> Result<Monomial> {
    let bound = binomial(n, r);
    if index >= bound {
        return Err(Error::IndexOutOfRange { index, bound });
    }
    let mut rest = index;
    let mut bits = 0u64;
    let mut top = n;
    for i in (1..=r).rev() {
        // largest c < top with C(c, i) <= rest
        let mut c = top - 1;
        while binomial(c, i) > rest {
            c -= 1;
        }
        bits |= 1 << c;
        rest -= binomial(c, i);
        top = c;
    }
    Ok(Monomial(bits))
}

/// All degree-`r` monomials in `n` generators, in colex order (so the k-th
/// item has rank k).
pub fn monomials(n: usize, r: usize) -> impl Iterator<Item = Monomial> {
    assert!(n <= MAX_GENERATORS);
    let count = binomial(n, r);
    let first = if r == 0 { 0 } else { u64::MAX >> (64 - r) };
    std::iter::successors((count > 0).then_some(first), move |&b| {
        if b == 0 {
            return None;
        }
        // Gosper's hack: next integer with the same popcount
        let c = b & b.wrapping_neg();
        let (r_, overflow) = b.overflowing_add(c);
        if overflow {
            return None;
        }
        let next = (((r_ ^ b) >> 2) / c) | r_;
        (n == 64 || next >> n == 0).then_some(next)
    })
    .map(Monomial)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent colex enumeration: all subsets by increasing bit value,
    /// filtered by size.
    fn colex_by_filter(n: usize, r: usize) -> Vec<Monomial> {
        (0u64..1 << n).filter(|b| b.count_ones() as usize == r).map(Monomial).collect()
    }

    #[test]
    fn rank_of_initial_segment_is_zero() {
        for r in 0..6 {
            let m = Monomial::from_indices(&(0..r).collect::<Vec<_>>()).unwrap();
            assert_eq!(mono_rank(m, r).unwrap(), 0);
        }
    }

    #[test]
    fn two_subsets_of_six_round_trip() {
        for (k, m) in colex_by_filter(6, 2).into_iter().enumerate() {
            assert_eq!(mono_rank(m, 2).unwrap(), k);
            assert_eq!(mono_unrank(k, 2, 6).unwrap(), m);
        }
        // colex order of 2-subsets starts {0,1}, {0,2}, {1,2}
        let idx = colex_by_filter(6, 2)
            .iter()
            .position(|&m| m == Monomial::from_indices(&[1, 2]).unwrap())
            .unwrap();
        assert_eq!(idx, 2);
        assert_eq!(mono_rank(Monomial::from_indices(&[1, 2]).unwrap(), 2).unwrap(), 2);
    }

    #[test]
    fn iterator_matches_filtered_enumeration() {
        for n in 0..=8 {
            for r in 0..=n + 1 {
                assert_eq!(monomials(n, r).collect::<Vec<_>>(), colex_by_filter(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn unrank_rejects_out_of_range() {
        assert!(mono_unrank(15, 2, 6).is_err());
        assert!(mono_rank(Monomial::from_indices(&[0, 1]).unwrap(), 3).is_err());
    }

    #[test]
    fn invalid_index_lists() {
        assert!(Monomial::from_indices(&[1, 1]).is_err());
        assert!(Monomial::from_indices(&[2, 1]).is_err());
        assert!(Monomial::from_indices(&[64]).is_err());
    }

    #[test]
    fn wedge_signs() {
        let x1 = Monomial::generator(0);
        let x2 = Monomial::generator(1);
        assert_eq!(x1.wedge(x1), None);
        assert_eq!(x2.wedge(x1), Some((Monomial::from_bits(0b11), true)));
        assert_eq!(x1.wedge(x2), Some((Monomial::from_bits(0b11), false)));
        // (e1 e3) ∧ (e0 e2): e1 e3 e0 e2 -> 3 inversions
        let a = Monomial::from_indices(&[1, 3]).unwrap();
        let b = Monomial::from_indices(&[0, 2]).unwrap();
        assert_eq!(a.wedge(b), Some((Monomial::from_bits(0b1111), true)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial_signed(4, -2), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}

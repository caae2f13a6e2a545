//! Totally isotropic subspaces of `(F_p^{2m}, ω)`: perpendiculars, radicals,
//! and enumeration of isotropic subspaces of a fixed dimension.
//!
//! Enumeration walks rref matrices directly: for each pivot pattern the rows
//! are filled one at a time and a row is kept only if it pairs to zero with
//! every earlier row. Each subspace is visited exactly once, in its canonical
//! form.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Prime, Subspace};
use crate::symplectic::SymplecticSpace;

/// Enumerations larger than this are refused.
pub const CATALOG_BOUND: u64 = 1_000_000;

/// All isotropic subspaces of one dimension, in enumeration order.
#[derive(Clone, Debug, Serialize)]
pub struct IsotropicCatalog {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    pub subspaces: Vec<Subspace>,
    pub complete: bool,
}

impl IsotropicCatalog {
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// One JSON line per subspace followed by `{"count":…,"complete":…}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.subspaces {
            out.push_str(&serde_json::json!({ "rows": s.basis_vectors() }).to_string());
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "count": self.len(), "complete": self.complete }).to_string());
        out.push('\n');
        out
    }
}

/// `sub = rad ⊕ a` with `rad` the radical of `ω|sub`.
#[derive(Clone, Debug, Serialize)]
pub struct RadicalSplit {
    pub sub: Subspace,
    pub rad: Subspace,
    pub a: Subspace,
    /// `ω` on the rref basis of `a`.
    pub gram_a: Matrix,
}

/// Number of isotropic r-dimensional subspaces:
/// `∏_{i<r} (p^{2(m−i)} − 1) / (p^{i+1} − 1)`.
pub fn isotropic_count(p: Prime, m: usize, r: usize) -> BigUint {
    if r > m {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(p.get());
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 0..r {
        num *= q.pow(2 * (m - i) as u32) - &one;
        den *= q.pow(i as u32 + 1) - &one;
    }
    num / den
}

/// A unit of enumeration work: one pivot pattern with its first row fixed.
struct Task {
    pivots: Vec<usize>,
    first: Option<Vec<u32>>,
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < r - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

impl SymplecticSpace {
    /// `S_g = {h : ω(g, h) = 0}`.
    pub fn perp(&self, g: &[u32]) -> Result<Subspace> {
        if g.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: g.len(),
            });
        }
        let row = self.gram().transpose().mul_vec(g)?;
        Ok(Matrix::from_reduced_rows(self.p(), self.n(), &[row])?.kernel())
    }

    /// `sub^⊥`.
    pub fn perp_of(&self, sub: &Subspace) -> Result<Subspace> {
        Ok(sub.basis().mul(self.gram())?.kernel())
    }

    /// Radical of `ω|sub` and a complement found by greedy hyperbolic pairs.
    pub fn radical_split(&self, sub: &Subspace) -> Result<RadicalSplit> {
        let p = self.p();
        let mut rest = sub.basis_vectors();
        let mut pairs: Vec<Vec<u32>> = Vec::new();
        let mut radical: Vec<Vec<u32>> = Vec::new();
        while !rest.is_empty() {
            let u = rest.remove(0);
            let Some(k) = rest.iter().position(|w| self.omega(&u, w) != 0) else {
                radical.push(u);
                continue;
            };
            let mut w = rest.remove(k);
            let s = p.inv(self.omega(&u, &w));
            w.iter_mut().for_each(|x| *x = p.mul(*x, s));
            // make the remaining vectors orthogonal to the new pair
            for x in rest.iter_mut() {
                let (xu, xw) = (self.omega(x, &u), self.omega(x, &w));
                for j in 0..x.len() {
                    x[j] = p.add(p.sub(x[j], p.mul(xw, u[j])), p.mul(xu, w[j]));
                }
            }
            pairs.push(u);
            pairs.push(w);
        }
        let n = self.n();
        let a = Subspace::from_reduced_vectors(p, n, &pairs);
        let rad = Subspace::from_reduced_vectors(p, n, &radical);
        assert_eq!(rad, sub.intersection(&self.perp_of(sub)?)?, "greedy radical disagrees with sub ∩ sub^⊥");
        let gram_a = a.basis().mul(self.gram())?.mul(&a.basis().transpose())?;
        assert_eq!(gram_a.rank(), a.dim(), "form degenerate on the complement");
        Ok(RadicalSplit {
            sub: sub.clone(),
            rad,
            a,
            gram_a,
        })
    }

    /// Functionals on `sub` (coordinates dual to its rref basis) that vanish
    /// at `g`.
    pub fn annihilator(&self, sub: &Subspace, g: &[u32]) -> Result<Subspace> {
        let coords = sub.member(g)?.ok_or(Error::NotMember)?;
        Ok(Matrix::from_reduced_rows(self.p(), sub.dim(), &[coords])?.kernel())
    }

    /// Refuses enumerations above [`CATALOG_BOUND`]; returns the exact count.
    pub fn check_enumeration_bound(&self, r: usize) -> Result<u64> {
        let count = isotropic_count(self.p(), self.m(), r);
        match u64::try_from(&count) {
            Ok(c) if c <= CATALOG_BOUND => Ok(c),
            _ => Err(Error::CatalogTooLarge {
                count: count.to_string(),
                bound: CATALOG_BOUND,
            }),
        }
    }

    fn tasks(&self, r: usize) -> Vec<Task> {
        if r > self.m() {
            return Vec::new();
        }
        if r == 0 {
            return vec![Task {
                pivots: Vec::new(),
                first: None,
            }];
        }
        let mut out = Vec::new();
        for pivots in subsets(self.n(), r) {
            let free = self.free_columns(&pivots, 0);
            let count = (self.p().get() as u64).pow(free.len() as u32);
            for idx in 0..count {
                out.push(Task {
                    first: Some(self.fill_row(pivots[0], &free, idx)),
                    pivots: pivots.clone(),
                });
            }
        }
        out
    }

    fn free_columns(&self, pivots: &[usize], i: usize) -> Vec<usize> {
        (pivots[i] + 1..self.n()).filter(|c| !pivots.contains(c)).collect()
    }

    /// Row with a 1 at `pivot` and the base-p digits of `idx` (most
    /// significant first) on the free columns.
    fn fill_row(&self, pivot: usize, free: &[usize], mut idx: u64) -> Vec<u32> {
        let p = self.p().get() as u64;
        let mut row = vec![0u32; self.n()];
        row[pivot] = 1;
        for &c in free.iter().rev() {
            row[c] = (idx % p) as u32;
            idx /= p;
        }
        row
    }

    fn run_task(&self, task: &Task, f: &mut dyn FnMut(&[Vec<u32>])) {
        let mut rows = Vec::with_capacity(task.pivots.len());
        if let Some(first) = &task.first {
            rows.push(first.clone());
        }
        self.extend(&task.pivots, &mut rows, f);
    }

    fn extend(&self, pivots: &[usize], rows: &mut Vec<Vec<u32>>, f: &mut dyn FnMut(&[Vec<u32>])) {
        let i = rows.len();
        if i == pivots.len() {
            f(rows);
            return;
        }
        let free = self.free_columns(pivots, i);
        let count = (self.p().get() as u64).pow(free.len() as u32);
        for idx in 0..count {
            let row = self.fill_row(pivots[i], &free, idx);
            if rows.iter().all(|prev| self.omega(prev, &row) == 0) {
                rows.push(row);
                self.extend(pivots, rows, f);
                rows.pop();
            }
        }
    }

    /// Visits the rref basis rows of every isotropic r-dimensional subspace,
    /// in a fixed order.
    pub fn for_each_isotropic(&self, r: usize, mut f: impl FnMut(&[Vec<u32>])) -> Result<()> {
        self.check_enumeration_bound(r)?;
        for task in self.tasks(r) {
            self.run_task(&task, &mut f);
        }
        Ok(())
    }

    /// Parallel fold over the isotropic r-dimensional subspaces. `reduce`
    /// must not depend on the order in which partial results meet.
    pub fn fold_isotropic<T, I, F, R>(&self, r: usize, init: I, fold: F, reduce: R) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(T, &[Vec<u32>]) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        self.check_enumeration_bound(r)?;
        let tasks = self.tasks(r);
        Ok(tasks
            .par_iter()
            .fold(&init, |acc, task| {
                let mut slot = Some(acc);
                self.run_task(task, &mut |rows| {
                    let a = slot.take().expect("accumulator present");
                    slot = Some(fold(a, rows));
                });
                slot.expect("accumulator present")
            })
            .reduce(&init, &reduce))
    }

    /// All isotropic r-dimensional subspaces; cached per space.
    pub fn enumerate_isotropic(&self, r: usize) -> Result<Arc<IsotropicCatalog>> {
        if let Some(c) = self.catalog_cache().lock().expect("cache lock").get(&r) {
            return Ok(Arc::clone(c));
        }
        let expected = self.check_enumeration_bound(r)?;
        let (p, n) = (self.p(), self.n());
        let chunks: Vec<Vec<Subspace>> = self
            .tasks(r)
            .par_iter()
            .map(|task| {
                let mut found = Vec::new();
                self.run_task(task, &mut |rows| {
                    found.push(Subspace::from_rref_rows(p, n, rows, task.pivots.clone()));
                });
                found
            })
            .collect();
        let subspaces: Vec<Subspace> = chunks.into_iter().flatten().collect();
        let catalog = Arc::new(IsotropicCatalog {
            p: p.get(),
            m: self.m(),
            r,
            complete: subspaces.len() as u64 == expected,
            subspaces,
        });
        assert!(catalog.complete, "enumeration missed subspaces");
        self.catalog_cache().lock().expect("cache lock").insert(r, Arc::clone(&catalog));
        Ok(catalog)
    }

    pub fn lagrangians(&self) -> Result<Arc<IsotropicCatalog>> {
        self.enumerate_isotropic(self.m())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::all_vectors;

    fn space(p: u64, m: usize) -> SymplecticSpace {
        SymplecticSpace::with(p, m).unwrap()
    }

    #[test]
    fn perps() {
        let s = space(3, 2);
        assert!(s.perp(&[0; 4]).unwrap().is_full());
        for g in all_vectors(s.p(), 4).skip(1) {
            let sg = s.perp(&g).unwrap();
            assert_eq!(sg.dim(), 3);
            assert!(sg.contains(&g).unwrap());
        }
    }

    #[test]
    fn counts_match_formula() {
        for (p, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3), (3, 3)] {
            let s = space(p, m);
            for r in 0..=m + 1 {
                let cat = s.enumerate_isotropic(r).unwrap();
                assert_eq!(BigUint::from(cat.len()), isotropic_count(s.p(), m, r), "({p},{m},{r})");
                for sub in &cat.subspaces {
                    assert!(s.is_isotropic(sub.basis()));
                }
            }
        }
        assert_eq!(space(2, 2).lagrangians().unwrap().len(), 15);
        assert_eq!(space(2, 3).lagrangians().unwrap().len(), 135);
        assert_eq!(space(3, 3).lagrangians().unwrap().len(), 1120);
    }

    #[test]
    fn lines_are_all_isotropic() {
        let s = space(5, 2);
        assert_eq!(s.enumerate_isotropic(1).unwrap().len(), (625 - 1) / 4);
    }

    #[test]
    fn catalogs_are_cached() {
        let s = space(2, 2);
        let a = s.lagrangians().unwrap();
        let b = s.clone().lagrangians().unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn bound_is_enforced() {
        let s = space(11, 3);
        assert!(matches!(s.enumerate_isotropic(3), Err(Error::CatalogTooLarge { .. })));
        assert_eq!(space(7, 3).check_enumeration_bound(2).unwrap(), 980_400);
    }

    #[test]
    fn radical_splits() {
        let s = space(3, 2);
        let full = Subspace::full(s.p(), 4);
        let split = s.radical_split(&full).unwrap();
        assert!(split.rad.is_zero());
        assert_eq!(split.a, full);

        let lag = s.lagrangians().unwrap().subspaces[3].clone();
        let split = s.radical_split(&lag).unwrap();
        assert_eq!(split.rad, lag);
        assert!(split.a.is_zero());

        let t = space(2, 3);
        for g in all_vectors(t.p(), 6).skip(1) {
            let split = t.radical_split(&t.perp(&g).unwrap()).unwrap();
            assert_eq!(split.rad.dim(), 1);
            assert!(split.rad.contains(&g).unwrap());
            assert_eq!(split.a.dim(), 4);
        }
    }

    #[test]
    fn annihilators() {
        let s = space(2, 1);
        let full = Subspace::full(s.p(), 2);
        assert!(s.annihilator(&full, &[0, 0]).unwrap().is_full());
        let ann = s.annihilator(&full, &[1, 0]).unwrap();
        assert_eq!(ann.basis_vectors(), vec![vec![0, 1]]);
        let line = Subspace::from_vectors(s.p(), 2, &[[1, 1]]).unwrap();
        assert_eq!(s.annihilator(&line, &[1, 0]), Err(Error::NotMember));
    }

    #[test]
    fn json_lines() {
        let text = space(2, 1).enumerate_isotropic(1).unwrap().to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], r#"{"rows":[[1,0]]}"#);
        assert_eq!(lines[3], r#"{"count":3,"complete":true}"#);
    }
}

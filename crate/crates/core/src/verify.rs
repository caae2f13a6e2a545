//! The property suite behind `infker verify-all`.
//!
//! Each check is self-contained and returns a failure message instead of
//! panicking, so one broken property does not hide the others. Randomized
//! checks draw from a ChaCha stream seeded by the caller.

use std::time::Instant;

use log::info;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exterior::{binomial, monomials, pullback_matrix, Monomial, Multivector};
use crate::extraspecial::{make_group, ExtraspecialElement};
use crate::linalg::{all_vectors, Matrix, Prime, Subspace};
use crate::symplectic::{premet_suprunenko, SymplecticSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Small,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub grid: Grid,
    pub seed: u64,
    pub ok: bool,
    pub checks: Vec<CheckResult>,
}

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn sp(p: u64, m: usize) -> Result<SymplecticSpace, String> {
    SymplecticSpace::with(p, m).map_err(|e| e.to_string())
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every subspace of `F_p^n`, one canonical rref per subspace.
pub fn all_subspaces(p: Prime, n: usize) -> Vec<Subspace> {
    let mut out = vec![Subspace::zero(p, n)];
    for r in 1..=n {
        for pivots in monomials(n, r) {
            let pivots = pivots.indices();
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| (c + 1..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
                .collect();
            for fill in all_vectors(p, slots.len()) {
                let mut rows = vec![vec![0i64; n]; r];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for (&(i, j), &x) in slots.iter().zip(&fill) {
                    rows[i][j] = x as i64;
                }
                out.push(Subspace::from_vectors(p, n, &rows).expect("row width"));
            }
        }
    }
    out
}

fn random_matrix(rng: &mut ChaCha8Rng, p: Prime, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(p, rows, cols, |_, _| rng.gen_range(0..p.get() as i64))
}

fn random_form(rng: &mut ChaCha8Rng, p: Prime, n: usize, r: usize) -> Multivector {
    let coords: Vec<u32> = (0..binomial(n, r)).map(|_| rng.gen_range(0..p.get())).collect();
    Multivector::from_coords(p, n, r, &coords).expect("coordinate count")
}

fn linalg_properties(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let p = Prime::new([2u64, 3, 5, 7][rng.gen_range(0..4)]).map_err(fail)?;
        let (r, c) = (rng.gen_range(0..8), rng.gen_range(0..8));
        let a = random_matrix(rng, p, r, c);
        let rr = a.rref();
        ensure!(rr.matrix.rref().matrix == rr.matrix, "rref not idempotent");
        ensure!(rr.matrix == a.rref_generic().matrix, "packed and generic rref disagree");
        ensure!(a.kernel().dim() + rr.rank() == c, "rank-nullity fails");
        let mixed = random_matrix(rng, p, r, r).mul(&a).map_err(fail)?;
        let s1 = Subspace::span(&a);
        let s2 = Subspace::span(&mixed.stack(&a).map_err(fail)?);
        ensure!(s1 == s2, "two generating sets give different canonical bases");
        if c > 0 {
            let v: Vec<u32> = (0..c).map(|_| rng.gen_range(0..p.get())).collect();
            let stacked = Matrix::from_reduced_rows(p, c, std::slice::from_ref(&v)).map_err(fail)?;
            let grows = s1.basis().stack(&stacked).map_err(fail)?.rank() > s1.dim();
            ensure!(s1.contains(&v).map_err(fail)? != grows, "membership disagrees with rank test");
        }
    }
    Ok(())
}

fn exterior_properties(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let p = Prime::new([2u64, 3, 5][rng.gen_range(0..3)]).map_err(fail)?;
        let m = rng.gen_range(1..4);
        let n = 2 * m;
        let (s, t, u) = (rng.gen_range(0..=n), rng.gen_range(0..=n), rng.gen_range(0..=n));
        let (a, b, c) = (random_form(rng, p, n, s), random_form(rng, p, n, t), random_form(rng, p, n, u));
        let ab = a.wedge(&b).map_err(fail)?;
        let ba = b.wedge(&a).map_err(fail)?;
        let expect = if (s * t) % 2 == 1 { -&ba } else { ba };
        ensure!(ab == expect, "graded anticommutativity fails");
        let left = ab.wedge(&c).map_err(fail)?;
        let right = a.wedge(&b.wedge(&c).map_err(fail)?).map_err(fail)?;
        ensure!(left == right, "wedge not associative");
        let v = random_form(rng, p, n, 1);
        ensure!(v.wedge(&v).map_err(fail)?.is_zero(), "v^v nonzero");
        let text = a.to_expr();
        ensure!(Multivector::parse(&text, p, m).map_err(fail)? == a, "parse(print) differs for {text}");

        let (k1, k2) = (rng.gen_range(0..5), rng.gen_range(0..5));
        let f = random_matrix(rng, p, n, k1);
        let g = random_matrix(rng, p, k1, k2);
        let deg = rng.gen_range(0..4) as i64;
        let lhs = pullback_matrix(&f.mul(&g).map_err(fail)?, deg).map_err(fail)?;
        let rhs = pullback_matrix(&g, deg).map_err(fail)?.mul(&pullback_matrix(&f, deg).map_err(fail)?).map_err(fail)?;
        ensure!(lhs == rhs, "pullback not contravariant");
    }
    Ok(())
}

fn sl2_grid() -> Outcome {
    for p in [2, 3, 5, 7] {
        for m in 1..=3 {
            let rep = sp(p, m)?.sl2_check();
            ensure!(rep.ok, "bracket relations fail at ({p},{m})");
        }
    }
    Ok(())
}

fn nilpotence() -> Outcome {
    for (p, m) in [(2, 2), (2, 3), (3, 3)] {
        ensure!(sp(p, m)?.x_minus_power_vanishes(p as usize), "X-^p nonzero at ({p},{m})");
    }
    Ok(())
}

fn isotropic_spans(grid: &[(u64, usize)]) -> Outcome {
    for &(p, m) in grid {
        let s = sp(p, m)?;
        for r in 0..=m as i64 {
            let f = s.isotropic_span_basis(r).map_err(fail)?;
            let e = s.primitive_basis(r).map_err(fail)?;
            ensure!(f.dim() == s.primitive_dimension_formula(r as usize), "dim F_{r} at ({p},{m})");
            ensure!(f.is_subspace_of(&e).map_err(fail)?, "F_{r} not inside E_{r} at ({p},{m})");
            if p as usize > m {
                ensure!(f == e, "F_{r} != E_{r} at ({p},{m})");
            }
        }
    }
    Ok(())
}

fn decomposition(grid: &[(u64, usize)]) -> Outcome {
    for &(p, m) in grid {
        let s = sp(p, m)?;
        for r in 0..=(2 * m - 2) as i64 {
            let probe = s.x_minus_probe(r).map_err(fail)?;
            if r < m as i64 {
                ensure!(probe.injective, "X- not injective on degree {r} at ({p},{m})");
            }
            if r + 1 >= m as i64 {
                ensure!(probe.surjective, "X- not onto degree {} at ({p},{m})", r + 2);
            }
        }
        for r in 0..=m {
            let e = s.primitive_basis(r as i64).map_err(fail)?;
            let img = s.ideal_component(r as i64).map_err(fail)?;
            let (sum, inter) = e.sum_and_intersection(&img).map_err(fail)?;
            ensure!(inter.is_zero() && sum.is_full(), "degree {r} not a direct sum at ({p},{m})");
        }
    }
    Ok(())
}

fn random_decompositions(rng: &mut ChaCha8Rng) -> Outcome {
    let s = sp(5, 2)?;
    for _ in 0..30 {
        let r = rng.gen_range(0..=2);
        let a = random_form(rng, s.p(), 4, r);
        let d = s.decompose(&a, Some(r)).map_err(fail)?;
        ensure!(s.x_plus(&d.primitive).map_err(fail)?.is_zero(), "primitive part not primitive");
        ensure!(&d.primitive + &s.x_minus(&d.beta).map_err(fail)? == a, "reassembly differs");
    }
    Ok(())
}

fn surjectivity_threshold() -> Outcome {
    for m in 1..=2usize {
        let s = sp(2, m)?;
        for r in (m as i64 - 1).max(0)..=(2 * m as i64 - 2) {
            ensure!(s.x_minus_probe(r).map_err(fail)?.surjective, "X- not onto at (2,{m}), r={r}");
        }
    }
    let probe = sp(2, 3)?.x_minus_probe(2).map_err(fail)?;
    ensure!(probe.corank == 1, "corank at (2,3) is {}", probe.corank);
    Ok(())
}

fn theorem1() -> Outcome {
    for (p, m) in [(3, 2), (5, 2)] {
        let rep = sp(p, m)?.theorem1_verify().map_err(fail)?;
        ensure!(rep.ok && rep.all_gaps_zero, "gap at ({p},{m})");
    }
    let t = sp(2, 3)?;
    let rep = t.theorem1_verify().map_err(fail)?;
    let gaps: Vec<usize> = rep.degrees.iter().map(|d| d.gap).collect();
    ensure!(gaps[..3] == [0, 0, 0] && gaps[4] == 1, "gaps at (2,3): {gaps:?}");
    ensure!(rep.degrees.iter().all(|d| d.ideal_contained), "ideal not inside T");
    let ce = t.counterexample().map_err(fail)?.ok_or("no counterexample at (2,3)")?;
    let zeta = t.parse("x2^x3^y2^y3").map_err(fail)?;
    let ideal = t.ideal_component(4).map_err(fail)?;
    let diff = (&ce.representative - &zeta).coords(4);
    ensure!(ce.r == 4 && ideal.contains(&diff).map_err(fail)?, "representative differs from zeta mod the ideal");
    ensure!(ce.in_vanishing_space && !ce.in_ideal, "representative outside T or inside the ideal");
    for (p, m) in [(3, 2), (2, 1)] {
        ensure!(sp(p, m)?.counterexample().map_err(fail)?.is_none(), "unexpected counterexample at ({p},{m})");
    }
    Ok(())
}

fn degree_two_bound() -> Outcome {
    for (p, m) in [(2, 3), (3, 2), (5, 2)] {
        let s = sp(p, m)?;
        ensure!(
            s.vanishing_space(2).map_err(fail)? == s.ideal_component(2).map_err(fail)?,
            "T_2 != <omega> at ({p},{m})"
        );
    }
    for (p, m) in [(2, 2), (2, 3), (3, 2)] {
        let s = sp(p, m)?;
        for r in 0..=2 * m as i64 {
            ensure!(
                s.vanishing_space(r).map_err(fail)? == s.vanishing_space_all_isotropic(r).map_err(fail)?,
                "Lagrangian-only T_{r} differs at ({p},{m})"
            );
        }
    }
    Ok(())
}

fn sp_invariance() -> Outcome {
    let s = sp(2, 3)?;
    for r in [2usize, 3, 4] {
        let t = s.vanishing_space(r as i64).map_err(fail)?;
        let i = s.ideal_component(r as i64).map_err(fail)?;
        ensure!(s.is_transvection_stable(r, &t).map_err(fail)?, "T_{r} not stable");
        ensure!(s.is_transvection_stable(r, &i).map_err(fail)?, "ideal_{r} not stable");
    }
    Ok(())
}

fn certificate() -> Outcome {
    let t = sp(2, 3)?;
    let rep = t.certificate(&t.parse("x2^x3^y2^y3").map_err(fail)?).map_err(fail)?;
    ensure!(rep.records.len() == 63 && rep.overall, "certificate failed");
    for r in &rep.records {
        ensure!(r.member && r.verified, "g = {:?} fails", r.g);
        ensure!((r.dim_s, r.dim_rad, r.dim_a) == (5, 1, 4), "structure at g = {:?}", r.g);
    }
    Ok(())
}

fn closure_vs_predicate(rng: &mut ChaCha8Rng) -> Outcome {
    let s = sp(2, 3)?;
    let verdict = premet_suprunenko(s.p(), 3, 2).map_err(fail)?;
    ensure!(verdict.irreducible, "predicate says reducible at (2,3,2)");
    let e2 = s.primitive_basis(2).map_err(fail)?;
    ensure!(e2.dim() == 14, "dim E_2 = {}", e2.dim());
    for _ in 0..5 {
        let mut coeffs: Vec<u32> = (0..e2.dim()).map(|_| rng.gen_range(0..2)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            coeffs[0] = 1;
        }
        let v = e2.basis().combine_rows(&coeffs).map_err(fail)?;
        let seed = Multivector::from_coords(s.p(), 6, 2, &v).map_err(fail)?;
        let c = s.submodule_closure(2, &[seed]).map_err(fail)?;
        ensure!(c == e2, "closure of a seed is {}-dimensional", c.dim());
    }
    let t = sp(2, 2)?;
    ensure!(!premet_suprunenko(t.p(), 2, 2).map_err(fail)?.irreducible, "predicate says irreducible at (2,2,2)");
    let c = t.submodule_closure(2, &[t.gamma()]).map_err(fail)?;
    let e2 = t.primitive_basis(2).map_err(fail)?;
    ensure!(c.dim() == 1 && e2.dim() == 5 && c.is_subspace_of(&e2).map_err(fail)?, "closure of omega");
    ensure!(t.is_transvection_stable(2, &c).map_err(fail)?, "closure not stable");
    Ok(())
}

fn transvections() -> Outcome {
    for (p, m) in [(2, 2), (3, 1), (3, 2)] {
        let s = sp(p, m)?;
        for v in all_vectors(s.p(), s.n()).skip(1) {
            let t = s.transvection(&v).map_err(fail)?;
            let back = t.transpose().mul(s.gram()).map_err(fail)?.mul(&t).map_err(fail)?;
            ensure!(&back == s.gram(), "transvection breaks the form at ({p},{m})");
            ensure!(t.mul_vec(&v).map_err(fail)? == v, "transvection moves its vector");
        }
    }
    Ok(())
}

fn extraspecial(rng: &mut ChaCha8Rng) -> Outcome {
    for (p, m) in [(2, 1), (2, 2), (3, 1), (2, 3)] {
        let g = make_group(p, m).map_err(fail)?;
        let n = 2 * m;
        ensure!(g.elements().count() as u64 == p.pow(1 + n as u32), "order at ({p},{m})");
        ensure!(g.center().len() == p as usize, "center at ({p},{m})");
        ensure!(g.commutator_form() == *g.space().gram(), "commutator form at ({p},{m})");
        let all: Vec<ExtraspecialElement> = g.elements().collect();
        if all.len() <= 27 {
            for a in &all {
                for b in &all {
                    for c in &all {
                        ensure!(g.mul(&g.mul(a, b), c) == g.mul(a, &g.mul(b, c)), "associativity at ({p},{m})");
                    }
                }
            }
        } else {
            for _ in 0..10_000 {
                let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..all.len())].clone();
                let (a, b, c) = (pick(rng), pick(rng), pick(rng));
                ensure!(g.mul(&g.mul(&a, &b), &c) == g.mul(&a, &g.mul(&b, &c)), "associativity at ({p},{m})");
            }
        }
        for a in &all {
            for b in all.iter().step_by(3) {
                let c = g.commutator(a, b);
                let w = g.space().omega(&a.v, &b.v);
                ensure!(c == ExtraspecialElement { z: w, v: vec![0; n] }, "commutator of {a} and {b}");
            }
            ensure!(g.pow(a, p).v.iter().all(|&x| x == 0), "quotient not of exponent p");
        }
        for v in all_vectors(g.p(), n) {
            let lift = ExtraspecialElement { z: 1 % p as u32, v: v.clone() };
            ensure!(
                g.centralizer_image(&lift) == g.space().perp(&v).map_err(fail)?,
                "centralizer image differs from perp at ({p},{m})"
            );
        }
    }
    let g = make_group(2, 2).map_err(fail)?;
    let subs = all_subspaces(g.p(), 4);
    ensure!(subs.len() == 67, "{} subspaces of F_2^4", subs.len());
    for a in &subs {
        ensure!(
            g.abelian_preimage_check(a) == g.space().is_isotropic(a.basis()),
            "abelian preimage disagrees with isotropy"
        );
    }
    ensure!(make_group(2, 1).map_err(fail)?.is_dihedral_of_order_8(), "(2,1) is not dihedral");
    Ok(())
}

fn catalogs() -> Outcome {
    for (p, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)] {
        let s = sp(p, m)?;
        let lags = s.lagrangians().map_err(fail)?;
        ensure!(lags.complete, "incomplete catalog at ({p},{m})");
        let g = make_group(p, m).map_err(fail)?;
        for l in &lags.subspaces {
            ensure!(s.is_isotropic(l.basis()), "non-isotropic member at ({p},{m})");
            if p.pow(1 + m as u32) <= 128 {
                ensure!(g.abelian_preimage_check(l), "preimage of a Lagrangian not abelian");
            }
        }
        for r in 1..m {
            for a in &s.enumerate_isotropic(r).map_err(fail)?.subspaces {
                let mut found = false;
                for l in &lags.subspaces {
                    if a.is_subspace_of(l).map_err(fail)? {
                        found = true;
                        break;
                    }
                }
                ensure!(found, "isotropic subspace without a Lagrangian at ({p},{m})");
            }
        }
    }
    Ok(())
}

fn ladders(rng: &mut ChaCha8Rng) -> Outcome {
    for (p, m) in [(3, 2), (5, 2), (2, 3), (7, 3)] {
        let s = sp(p, m)?;
        for r in 0..=m {
            let e = s.primitive_basis(r as i64).map_err(fail)?;
            if e.is_zero() {
                continue;
            }
            for _ in 0..3 {
                let mut c: Vec<u32> = (0..e.dim()).map(|_| rng.gen_range(0..p as u32)).collect();
                if c.iter().all(|&x| x == 0) {
                    c[0] = 1;
                }
                let v = e.basis().combine_rows(&c).map_err(fail)?;
                let eps = Multivector::from_coords(s.p(), s.n(), r, &v).map_err(fail)?;
                let l = s.ladder(&eps).map_err(fail)?;
                ensure!(l.relations_hold, "ladder relations fail at ({p},{m}), r={r}");
            }
        }
    }
    Ok(())
}

fn quotient() -> Outcome {
    let t = sp(2, 3)?;
    let q = t.quotient_basis(4).map_err(fail)?;
    ensure!(q.len() == 1, "quotient dimension {}", q.len());
    let zeta = Monomial::from_indices(&[1, 2, 4, 5]).map_err(fail)?;
    let coords = Multivector::monomial(t.p(), 6, zeta, 1).coords(4);
    ensure!(!t.ideal_component(4).map_err(fail)?.contains(&coords).map_err(fail)?, "zeta lies in the ideal");
    Ok(())
}

/// Runs the suite; `Full` adds the larger parameter points.
pub fn verify_all(grid: Grid, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small_spans = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)];
    let full_spans = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2), (3, 3), (7, 3)];
    let spans: &[(u64, usize)] = if grid == Grid::Full { &full_spans } else { &small_spans };
    let decomp: &[(u64, usize)] = if grid == Grid::Full {
        &[(3, 2), (5, 2), (7, 3), (5, 3)]
    } else {
        &[(3, 2), (5, 2)]
    };

    let mut checks = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let res = f();
        info!("{name}: {:?}", start.elapsed());
        checks.push(CheckResult {
            name,
            ok: res.is_ok(),
            failure: res.err(),
        });
    };
    run("linear-algebra", &mut || linalg_properties(&mut rng));
    run("exterior-algebra", &mut || exterior_properties(&mut rng));
    run("sl2-relations", &mut sl2_grid);
    run("nilpotence", &mut nilpotence);
    run("isotropic-span-dimension", &mut || isotropic_spans(spans));
    run("primitive-decomposition", &mut || decomposition(decomp));
    run("random-decompositions", &mut || random_decompositions(&mut rng));
    run("surjectivity-threshold", &mut surjectivity_threshold);
    run("ladder-relations", &mut || ladders(&mut rng));
    run("transvections", &mut transvections);
    run("closure-vs-predicate", &mut || closure_vs_predicate(&mut rng));
    run("isotropic-catalogs", &mut catalogs);
    run("extraspecial", &mut || extraspecial(&mut rng));
    run("quotient-basis", &mut quotient);
    run("theorem1", &mut theorem1);
    run("degree-two-bound", &mut degree_two_bound);
    run("sp-invariance", &mut sp_invariance);
    run("certificate", &mut certificate);
    VerifyReport {
        grid,
        seed,
        ok: checks.iter().all(|c| c.ok),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: 1 + 15 + 35 + 15 + 1
        assert_eq!(all_subspaces(Prime::new(2).unwrap(), 4).len(), 67);
        assert_eq!(all_subspaces(Prime::new(3).unwrap(), 2).len(), 1 + 4 + 1);
    }
}

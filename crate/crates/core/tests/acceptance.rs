//! Acceptance gate: twelve criteria, one PASS/FAIL line each, with wall-time
//! bounds. Runs without the libtest harness so the lines always print.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use infker::exterior::{binomial, monomials, Multivector};
use infker::extraspecial::make_group;
use infker::linalg::{Matrix, Prime};
use infker::symplectic::{premet_suprunenko, SIGMA};
use infker::verify::all_subspaces;
use infker::SymplecticSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sp(p: u64, m: usize) -> SymplecticSpace {
    SymplecticSpace::with(p, m).unwrap()
}

fn formula(m: usize, r: usize) -> usize {
    let n = 2 * m;
    binomial(n, r) - if r >= 2 { binomial(n, r - 2) } else { 0 }
}

fn c1_quotient() {
    let t = sp(2, 3);
    let q = t.quotient_basis(4).unwrap();
    let names: Vec<String> = q.iter().map(|&m| t.monomial_expr(m)).collect();
    assert_eq!(names, ["x2^x3^y2^y3"]);
    // rank of Γ∧· on Λ² computed directly from wedges with every monomial
    let gamma = t.gamma();
    let rows: Vec<Vec<u32>> = monomials(6, 2)
        .map(|mono| gamma.wedge(&Multivector::monomial(t.p(), 6, mono, 1)).unwrap().coords(4))
        .collect();
    let rank = Matrix::from_reduced_rows(t.p(), 15, &rows).unwrap().rank();
    assert_eq!(binomial(6, 4) - rank, 1);
    let zeta = t.parse("x2^x3^y2^y3").unwrap();
    let ideal = t.ideal_component(4).unwrap();
    assert!(!ideal.contains(&zeta.coords(4)).unwrap());
}

fn c2_sl2() {
    assert_eq!(SIGMA.abs(), 1);
    for p in [2, 3, 5, 7] {
        for m in 1..=3 {
            let rep = sp(p, m).sl2_check();
            assert!(rep.ok, "({p},{m})");
            assert_eq!(rep.sigma, SIGMA);
            assert_eq!(rep.degrees.len(), 2 * m + 1);
        }
    }
}

fn c3_dimension() {
    for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)] {
        let s = sp(p, m);
        for r in 0..=m {
            assert_eq!(s.isotropic_span_basis(r as i64).unwrap().dim(), formula(m, r), "({p},{m}) r={r}");
        }
    }
}

fn c4_decomposition() {
    for (p, m) in [(3, 2), (5, 2), (7, 3)] {
        let s = sp(p, m);
        let n = 2 * m;
        for r in 0..=n - 2 {
            let a = s.x_minus_matrix(r);
            let rank = a.rank();
            if r < m {
                assert_eq!(rank, binomial(n, r), "injective ({p},{m}) r={r}");
            }
            if r + 1 >= m {
                assert_eq!(rank, binomial(n, r + 2), "surjective ({p},{m}) r={r}");
            }
        }
        for r in 0..=m {
            let e = s.primitive_basis(r as i64).unwrap();
            let img = s.ideal_component(r as i64).unwrap();
            let (sum, inter) = e.sum_and_intersection(&img).unwrap();
            assert!(inter.is_zero() && sum.is_full(), "direct sum ({p},{m}) r={r}");
            assert_eq!(e, s.isotropic_span_basis(r as i64).unwrap(), "E_r = F_r ({p},{m}) r={r}");
        }
    }
}

fn c5_surjectivity() {
    for m in 1..=2usize {
        let s = sp(2, m);
        for r in m - 1..=2 * m - 2 {
            assert_eq!(s.x_minus_matrix(r).rank(), binomial(2 * m, r + 2), "(2,{m}) r={r}");
        }
    }
    let t = sp(2, 3);
    assert_eq!(binomial(6, 4) - t.x_minus_matrix(2).rank(), 1);
}

fn c6_theorem1() {
    for (p, m) in [(3, 2), (5, 2)] {
        let rep = sp(p, m).theorem1_verify().unwrap();
        assert!(rep.degrees.iter().all(|d| d.gap == 0), "({p},{m})");
    }
    let t = sp(2, 3);
    let rep = t.theorem1_verify().unwrap();
    for r in 0..=2 {
        assert_eq!(rep.degrees[r].gap, 0);
    }
    assert_eq!(rep.degrees[4].gap, 1);
    let ce = t.counterexample().unwrap().unwrap();
    assert_eq!(ce.r, 4);
    let zeta = t.parse("x2^x3^y2^y3").unwrap();
    let diff = &ce.representative - &zeta;
    assert!(t.ideal_component(4).unwrap().contains(&diff.coords(4)).unwrap());
}

fn c7_degree_two() {
    for (p, m) in [(2, 3), (3, 2), (5, 2)] {
        let s = sp(p, m);
        let t2 = s.vanishing_space(2).unwrap();
        assert_eq!(t2.dim(), 1, "({p},{m})");
        assert!(t2.contains(&s.gamma().coords(2)).unwrap());
    }
}

fn c8_certificate() {
    let t = sp(2, 3);
    let p = t.p();
    let zeta = t.parse("x2^x3^y2^y3").unwrap();
    let rep = t.certificate(&zeta).unwrap();
    assert_eq!(rep.records.len(), 63);
    assert!(rep.overall);
    for rec in &rep.records {
        assert_eq!((rec.dim_s, rec.dim_rad, rec.dim_a), (5, 1, 4), "g = {:?}", rec.g);
        assert!(rec.member);
        // rebuild the witness from its coefficients
        let s = t.perp(&rec.g).unwrap();
        let restricted = t.restrict(&zeta, &s).unwrap();
        if rec.restriction_zero {
            assert!(restricted.is_zero());
            continue;
        }
        let k = s.dim();
        let omega_s = t.restrict(&t.gamma(), &s).unwrap();
        let mut rebuilt = Multivector::zero(p, k);
        for (mono, &c) in monomials(k, 2).zip(&rec.omega_coeffs) {
            let term = omega_s.wedge(&Multivector::monomial(p, k, mono, 1)).unwrap();
            rebuilt = &rebuilt + &term.scale(c);
        }
        let ann = t.annihilator(&s, &rec.g).unwrap();
        let forms: Vec<Multivector> = ann.basis_vectors().iter().map(|v| Multivector::from_vector(p, v)).collect();
        for (mono, &c) in monomials(ann.dim(), 4).zip(&rec.annihilator_coeffs) {
            let term = mono.indices().iter().fold(Multivector::one(p, k), |acc, &i| acc.wedge(&forms[i]).unwrap());
            rebuilt = &rebuilt + &term.scale(c);
        }
        assert_eq!(rebuilt, restricted, "g = {:?}", rec.g);
    }
}

fn c9_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s = sp(2, 3);
    assert!(premet_suprunenko(s.p(), 3, 2).unwrap().irreducible);
    let e2 = s.primitive_basis(2).unwrap();
    assert_eq!(e2.dim(), 14);
    for _ in 0..5 {
        let mut c: Vec<u32> = (0..14).map(|_| rng.gen_range(0..2)).collect();
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        let v = e2.basis().combine_rows(&c).unwrap();
        let seed = Multivector::from_coords(s.p(), 6, 2, &v).unwrap();
        assert_eq!(s.submodule_closure(2, &[seed]).unwrap(), e2);
    }
    let t = sp(2, 2);
    assert!(!premet_suprunenko(t.p(), 2, 2).unwrap().irreducible);
    let e2 = t.primitive_basis(2).unwrap();
    let c = t.submodule_closure(2, &[t.gamma()]).unwrap();
    assert_eq!((c.dim(), e2.dim()), (1, 5));
    assert!(c.is_subspace_of(&e2).unwrap());
}

fn c10_extraspecial() {
    for (p, m) in [(2u64, 1usize), (2, 2), (3, 1), (2, 3)] {
        let g = make_group(p, m).unwrap();
        let n = 2 * m;
        assert_eq!(g.elements().count() as u64, p.pow(1 + n as u32));
        let center = g.center();
        assert_eq!(center.len(), p as usize);
        assert!(center.iter().all(|c| c.v.iter().all(|&x| x == 0)));
        for i in 0..n {
            for j in 0..n {
                let mut u = vec![0i64; n];
                let mut v = vec![0i64; n];
                u[i] = 1;
                v[j] = 1;
                let (a, b) = (g.element(0, &u).unwrap(), g.element(0, &v).unwrap());
                let c = g.commutator(&a, &b);
                let w = g.space().omega(&a.v, &b.v);
                assert_eq!(c, g.element(w as i64, &vec![0; n]).unwrap());
            }
        }
    }
    let g = make_group(2, 2).unwrap();
    let subs = all_subspaces(Prime::new(2).unwrap(), 4);
    assert_eq!(subs.len(), 67);
    for a in &subs {
        assert_eq!(g.abelian_preimage_check(a), g.space().is_isotropic(a.basis()));
    }
    let d8 = make_group(2, 1).unwrap();
    assert!(d8.is_dihedral_of_order_8());
    let orders: Vec<u64> = d8.elements().map(|x| d8.element_order(&x)).collect();
    assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 5);
    assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
}

fn c11_nilpotence() {
    for (p, m) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let s = sp(p as u64, m);
        for r in 0..=2 * m {
            // X₋^p from Λʳ, as the product of the graded pieces
            let mut acc = Matrix::identity(s.p(), binomial(2 * m, r));
            for k in 0..p {
                let d = r + 2 * k;
                if d > 2 * m {
                    break;
                }
                acc = s.x_minus_matrix(d).mul(&acc).unwrap();
            }
            if r + 2 * p <= 2 * m {
                assert!(acc.is_zero(), "({p},{m}) r={r}");
            }
        }
        assert!(s.x_minus_power_vanishes(p));
    }
}

fn c12_verify_all() {
    let out = Command::new(env!("CARGO_BIN_EXE_infker"))
        .args(["verify-all", "--grid", "small"])
        .env("INFKER_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
}

fn main() {
    let criteria: [(&str, fn(), u64); 12] = [
        ("1 quotient basis at (2,3,4)", c1_quotient, 1),
        ("2 sl2 relations", c2_sl2, 10),
        ("3 isotropic span dimension", c3_dimension, 60),
        ("4 primitive decomposition", c4_decomposition, 30),
        ("5 surjectivity threshold", c5_surjectivity, 5),
        ("6 kernel bounds", c6_theorem1, 60),
        ("7 degree-2 vanishing space", c7_degree_two, 30),
        ("8 membership certificate", c8_certificate, 10),
        ("9 predicate vs closure", c9_closure, 60),
        ("10 extraspecial structure", c10_extraspecial, 30),
        ("11 nilpotence", c11_nilpotence, 5),
        ("12 verify-all small grid", c12_verify_all, 300),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (name, f, bound) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f));
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(bound);
        let ok = res.is_ok() && in_time;
        if !ok {
            failed += 1;
        }
        let note = if res.is_ok() && !in_time { " (over time bound)" } else { "" };
        println!(
            "criterion {name}: {} in {:.3}s (bound {bound}s){note}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {}/12 passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}


use cotype_zeta::arith::{kronecker, kronecker_symbol};
use cotype_zeta::cotype::{catalog_for_prime, corank_specialize};
use cotype_zeta::euler::*;
use cotype_zeta::liealg::LieAlgebra;
use cotype_zeta::ratfun::{qf, rf, Var};
use proptest::prelude::*;
use std::f64::consts::PI;

const BOUND: u64 = DEFAULT_PRIME_BOUND;

/// Direct Dirichlet sum with the integral tail; independent of the library.
fn zeta_direct(s: f64) -> f64 {
    let n = 200_000u64;
    let sum: f64 = (1..=n).map(|k| (k as f64).powf(-s)).sum();
    sum + (n as f64).powf(1.0 - s) / (s - 1.0) - 0.5 * (n as f64).powf(-s)
}

fn sieve(n: usize) -> Vec<u64> {
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn euler_product(f: impl Fn(f64) -> f64) -> f64 {
    sieve(1_000_000).into_iter().map(|p| f(p as f64).ln()).sum::<f64>().exp()
}

fn asym(name: &str, m: usize) -> Asymptotic {
    analyze(&LieAlgebra::catalog(name).unwrap(), m, BOUND).unwrap().asymptotic()
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    ((got - want) / want).abs() < rel
}

#[test]
fn zeta_and_l_values() {
    assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-13);
    assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-13);
    assert!((zeta(1.5).unwrap() - zeta_direct(1.5)).abs() < 1e-8);
    assert!(zeta(1.0).is_err());
    assert!((dirichlet_l(1.0, -4).unwrap() - PI / 4.0).abs() < 1e-9);
    assert!((dirichlet_l(1.0, -3).unwrap() - PI / (3.0 * 3f64.sqrt())).abs() < 1e-9);
    // Catalan's constant
    assert!((dirichlet_l(2.0, -4).unwrap() - 0.915_965_594_177_219).abs() < 1e-9);
    // L(1, chi_5) = 2 log(golden ratio) / sqrt 5
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((dirichlet_l(1.0, 5).unwrap() - 2.0 * phi.ln() / 5f64.sqrt()).abs() < 1e-9);
    assert!(dirichlet_l(1.0, 7).is_err());
}

#[test]
fn heisenberg_corank_one_factors() {
    let h = catalog_for_prime("H", 3).unwrap().value;
    let w = corank_specialize(&h, 1).unwrap();
    let zf = extract_zeta_factors(&w).unwrap();
    let ab: Vec<(i32, u32, i32)> = zf.factors.iter().map(|f| (f.a, f.b, f.power)).collect();
    assert_eq!(ab, vec![(1, 1, 1), (3, 2, 1)]);
    assert_eq!(zf.residual, rf("1 + T - X*T^2 - X^3*T^3"));
    assert_eq!(zf.sigma0().unwrap(), qf(2, 1));
    assert_eq!(zf.order(), 2);
    assert!(zf.reassemble().equals(&w));
}

#[test]
fn heisenberg_full_factors() {
    let h = catalog_for_prime("H", 3).unwrap().value;
    let zf = extract_zeta_factors(&corank_specialize(&h, 3).unwrap()).unwrap();
    let mut ab: Vec<(i32, u32, i32)> = zf.factors.iter().map(|f| (f.a, f.b, f.power)).collect();
    ab.sort();
    assert_eq!(ab, vec![(0, 1, 1), (1, 1, 1), (2, 2, 1), (3, 2, 1), (3, 3, -1)]);
    assert!(zf.residual.as_constant().is_some_and(|c| c == qf(1, 1)));
}

#[test]
fn reassembly_is_exact_across_catalog() {
    for name in ["Z3", "H", "sl2", "L1", "L2"] {
        let l = LieAlgebra::catalog(name).unwrap();
        for m in 1..=3 {
            let data = EulerData::for_algebra(&l, m).unwrap();
            let zf = extract_zeta_factors(&data.generic).unwrap();
            assert!(zf.reassemble().equals(&data.generic), "{name} m={m}: {zf}");
        }
    }
}

#[test]
fn l2_generic_formula_specializes_to_both_classes() {
    let l = LieAlgebra::catalog("L2").unwrap();
    let data = EulerData::for_algebra(&l, 3).unwrap();
    for p in [3u64, 5, 7, 13] {
        let chi = cotype_zeta::ratfun::q(kronecker(-4, p) as i64);
        let generic = data.generic.substitute_values(&[(Var::C, chi)]).unwrap();
        let entry = corank_specialize(&catalog_for_prime("L2", p).unwrap().value, 3).unwrap();
        assert!(generic.equals(&entry), "p = {p}");
    }
    assert!(data.special.contains_key(&2));
}

#[test]
fn free_abelian_constants() {
    let z2 = zeta_direct(2.0);
    let z3 = zeta_direct(3.0);
    let z9 = zeta_direct(9.0);
    let m3 = asym("Z3", 3);
    assert_eq!(m3.log_power, 0);
    assert!(close(m3.constant, z2 * z3 / 3.0, 1e-4), "{m3}");
    assert!(close(asym("Z3", 2).constant, z2 * z3 / (3.0 * z9), 1e-4));
    let prod = euler_product(|p| 1.0 + p.powi(-2) + p.powi(-3));
    assert!(close(asym("Z3", 1).constant, prod / 3.0, 1e-4));
}

#[test]
fn heisenberg_constants() {
    let z2 = zeta_direct(2.0);
    let z3 = zeta_direct(3.0);
    let m3 = asym("H", 3);
    assert_eq!(m3.log_power, 1);
    assert!(close(m3.constant, z2 * z2 / (4.0 * z3), 1e-4), "{m3}");
    let p1 = euler_product(|p| 1.0 + p.powi(-2) - 2.0 * p.powi(-3));
    assert!(close(asym("H", 1).constant, p1 / 4.0, 1e-4));
    let p2 = euler_product(|p| 1.0 + p.powi(-2) - p.powi(-3) + p.powi(-4) - p.powi(-5) - p.powi(-6));
    assert!(close(asym("H", 2).constant, z2 * p2 / 4.0, 1e-4));
}

#[test]
fn pole_is_shared_by_all_coranks() {
    for name in ["Z3", "H", "sl2", "L1", "L2"] {
        let l = LieAlgebra::catalog(name).unwrap();
        let poles: Vec<_> = (1..=3)
            .map(|m| {
                let p = analyze(&l, m, BOUND).unwrap().pole;
                (p.sigma0, p.order)
            })
            .collect();
        assert!(poles.windows(2).all(|w| w[0] == w[1]), "{name}: {poles:?}");
    }
}

#[test]
fn catalog_densities() {
    let want = [
        ("Z3", 0.885, 0.998),
        ("H", 0.492, 0.975),
        ("sl2", 0.488, 0.974),
        ("L1", 0.492, 0.975),
        ("L2", 0.482, 0.970),
    ];
    for (name, d1, d2) in want {
        let l = LieAlgebra::catalog(name).unwrap();
        let p1 = density(&l, 1, BOUND).unwrap();
        let p2 = density(&l, 2, BOUND).unwrap();
        assert!((p1.value - d1).abs() < 2e-3, "{name}: {}", p1.value);
        assert!((p2.value - d2).abs() < 2e-3, "{name}: {}", p2.value);
        assert!(p1.value < p2.value && p2.value < 1.0);
        assert_eq!(density(&l, 3, BOUND).unwrap().value, 1.0);
    }
}

#[test]
fn density_errors() {
    let h = LieAlgebra::catalog("H").unwrap();
    assert!(matches!(density(&h, 0, BOUND), Err(cotype_zeta::Error::Domain(_))));
    assert!(matches!(density(&h, 4, BOUND), Err(cotype_zeta::Error::Domain(_))));
    assert!(density(&h, 1, 10).is_err());
    assert!(extract_zeta_factors(&rf("1/(1 - 2*T)")).is_err());
    assert!(extract_zeta_factors(&rf("1/(1 - Y1)")).is_err());
}

#[test]
fn binary_forms_need_the_census_at_two() {
    // 2 x2^2 + x3^2 has no transcribed formula at p = 2
    let l = LieAlgebra::new([0, 0, 1], [0, -2, 0], [0, 0, 0]).unwrap();
    let e = density(&l, 1, BOUND).unwrap_err();
    assert!(matches!(e, cotype_zeta::Error::NoFormula { p: 2, .. }), "{e}");
}

#[test]
fn scaled_heisenberg_differs_only_at_three() {
    use cotype_zeta::cotype::{route, Route};
    let h = LieAlgebra::catalog("H").unwrap();
    let h3 = LieAlgebra::new([0, 0, 3], [0, 0, 0], [0, 0, 0]).unwrap();
    // local factors at p = 3, s = 2
    let local = |l: &LieAlgebra, m: usize| -> f64 {
        let Route::Formula(f) = route(l, Some(3)) else { panic!("no formula") };
        let w = corank_specialize(&f.value, m).unwrap();
        let w = w.substitute_values(&[(Var::X, cotype_zeta::ratfun::q(3))]).unwrap();
        let mut v = [0.0; cotype_zeta::ratfun::NVARS];
        v[Var::T.index()] = 1.0 / 9.0;
        w.eval_f64(&v)
    };
    let ratio = |m| local(&h3, m) / local(&h, m);
    let want = density(&h, 1, BOUND).unwrap().value * ratio(1) / ratio(3);
    let got = density(&h3, 1, BOUND).unwrap();
    assert!(close(got.value, want, 1e-6), "{} vs {want}", got.value);
    assert!((got.value - 0.492).abs() > 1e-4);
}

#[test]
fn asymptotic_display() {
    let a = asym("H", 3);
    let s = a.to_string();
    assert!(s.ends_with("X^2 * log X"), "{s}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kronecker_symbol_is_multiplicative(d in -60i64..60, a in 1u64..200, b in 1u64..200) {
        prop_assert_eq!(
            kronecker_symbol(d, a * b),
            kronecker_symbol(d, a) * kronecker_symbol(d, b)
        );
    }

    #[test]
    fn kronecker_symbol_agrees_at_primes(d in -200i64..200, pi in 0usize..10) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29][pi];
        prop_assert_eq!(kronecker_symbol(d, p), kronecker(d, p));
    }

    #[test]
    fn zeta_matches_direct_sum(s in 1.2f64..8.0) {
        prop_assert!((zeta(s).unwrap() - zeta_direct(s)).abs() < 1e-7);
    }
}

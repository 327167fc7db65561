use cotype_zeta::arith::least_nonresidue;
use cotype_zeta::igusa::*;
use cotype_zeta::liealg::QuadraticForm;
use cotype_zeta::ratfun::{q, qf, rf, RationalFunction, Var, Q};
use proptest::prelude::*;

/// Triple loop over `(Z/p^m)^3`, independent of the fiber-table counter.
fn naive(coef: [i64; 6], p: u64, m: u32) -> (u64, u64) {
    if m == 0 {
        return (1, 1);
    }
    let n = p.pow(m) as i64;
    let [a11, a22, a33, a12, a13, a23] = coef;
    let (mut all, mut star) = (0, 0);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = a11 * x * x + a22 * y * y + a33 * z * z + a12 * x * y + a13 * x * z + a23 * y * z;
                if v.rem_euclid(n) == 0 {
                    all += 1;
                    if [x, y, z].iter().any(|c| c % p as i64 != 0) {
                        star += 1;
                    }
                }
            }
        }
    }
    (all, star)
}

fn form(c: [i64; 6]) -> QuadraticForm {
    QuadraticForm::from_coefficients(c)
}

#[test]
fn small_counts() {
    let x3sq = form([0, 0, 1, 0, 0, 0]);
    let c = count_points(&x3sq, 3, 1).unwrap();
    assert_eq!((c.n, c.n_star), (9, 8));
    let c = count_points(&x3sq, 3, 0).unwrap();
    assert_eq!((c.n, c.n_star), (1, 1));
    let c = count_points(&QuadraticForm::zero(), 2, 1).unwrap();
    assert_eq!(c.n, 8);
    assert_eq!(poincare_partial(&x3sq, 3, 1).unwrap(), vec![q(1), qf(1, 3)]);
    assert!(poincare_partial(&QuadraticForm::zero(), 3, 3).unwrap().iter().all(|v| *v == q(1)));
}

#[test]
fn counts_agree_with_naive_enumeration() {
    let forms = [
        [1, 1, 1, 0, 0, 0],
        [0, 0, 1, 4, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [2, -3, 5, 1, -1, 7],
        [0, 0, 0, 0, 0, 0],
    ];
    for c in forms {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)] {
            let got = count_points(&form(c), p, m).unwrap();
            assert_eq!((got.n, got.n_star), naive(c, p, m), "{c:?} p={p} m={m}");
        }
    }
}

#[test]
fn budget_and_prime_errors() {
    let f = form([1, 1, 1, 0, 0, 0]);
    assert!(matches!(count_points_with_budget(&f, 7, 5, 1000), Err(cotype_zeta::Error::Budget(_))));
    assert!(count_points(&f, 4, 1).is_err());
}

#[test]
fn closed_form_transcriptions() {
    let h = closed_form(Family::H).unwrap();
    assert_eq!(h.value, rf("(1 - X^-1)/(1 - X^-1*T^2)"));
    let s10 = closed_form(Family::Solvable { i: 1, k: 0 }).unwrap().value;
    assert_eq!(s10, rf("(1 - X^-2)/(1 - X^-2*T^2)"));
    let s12 = closed_form(Family::Solvable { i: 1, k: 2 }).unwrap().value;
    assert_eq!(s12, rf("X^-1*T^2").mul(&s10).add(&rf("1 - X^-1")));
    assert_eq!(
        closed_form(Family::Solvable { i: 1, k: 1 }).unwrap().value,
        closed_form(Family::Solvable { i: 2, k: 1 }).unwrap().value
    );
    assert!(closed_form(Family::Solvable { i: 3, k: 0 }).is_err());
    assert!("nonsense".parse::<Family>().is_err());
    for f in Family::CATALOG {
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }
    assert_eq!("solvable(2,5)".parse::<Family>().unwrap(), Family::Solvable { i: 2, k: 5 });
}

fn valid_primes(f: Family) -> Vec<u64> {
    [2, 3, 5, 7].into_iter().filter(|&p| f.validity().holds(p)).collect()
}

#[test]
fn catalog_poincare_identity() {
    for fam in Family::CATALOG {
        for p in valid_primes(fam) {
            let levels = if p == 7 { 3 } else { 4 };
            let r = verify_closed_form(&fam.form(p), fam, p, levels).unwrap();
            assert!(r.all_match(), "{r}");
        }
    }
}

#[test]
fn solvable_and_character_poincare_identity() {
    for i in 1..=2u8 {
        for k in 0..=3 {
            let fam = Family::Solvable { i, k };
            for p in [3, 5] {
                let r = verify_closed_form(&fam.form(p), fam, p, 4).unwrap();
                assert!(r.all_match(), "{r}");
            }
        }
    }
    for d in [-4, -3, 5, -7, 8, 12] {
        let fam = Family::Character { d };
        for p in valid_primes(fam) {
            let r = verify_closed_form(&fam.form(p), fam, p, 3).unwrap();
            assert!(r.all_match(), "{r}");
        }
    }
}

#[test]
fn wrong_family_mismatches_early() {
    let f = form([0, 1, 1, 0, 0, 0]);
    let r = verify_closed_form(&f, Family::H, 5, 4).unwrap();
    assert!(r.first_mismatch().unwrap() <= 2);
    assert!(verify_closed_form(&f, Family::Sl2Two, 3, 2).is_err());
}

#[test]
fn primitive_identity() {
    let forms = [[0, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0], [0, 0, 1, 4, 0, 0]];
    let fams = |p: u64| {
        [
            Family::H,
            if p % 4 == 1 { Family::L2OneMod4 } else if p == 2 { Family::L2Two } else { Family::L2ThreeMod4 },
            if p == 2 { Family::Sl2Two } else { Family::Sl2Odd },
        ]
    };
    for p in [2, 3, 5] {
        for (c, fam) in forms.iter().zip(fams(p)) {
            let r = verify_primitive(&form(*c), fam, p, 4).unwrap();
            assert!(r.all_match(), "{r}");
        }
    }
}

#[test]
fn scaling_by_p_multiplies_by_t() {
    for p in [2u64, 3] {
        for fam in [Family::H, Family::L1Odd, Family::Sl2Two, Family::L1Two] {
            if !fam.validity().holds(p) {
                continue;
            }
            let base = fam.form(p);
            let scaled = base.scaled(p as i64);
            let z = closed_form(fam).unwrap().at_prime(p).unwrap();
            let t = RationalFunction::var(Var::T);
            let w = RationalFunction::one().sub(&t.mul(&t).mul(&z)).div(&rf("1 - T")).unwrap();
            let expected = cotype_zeta::ratfun::expand(&w, &[], &[Var::T], 4).unwrap();
            let counted = poincare_partial(&scaled, p, 4).unwrap();
            for (m, c) in counted.iter().enumerate() {
                assert_eq!(&expected[&vec![m as u32]], c, "{fam} p={p} m={m}");
            }
        }
    }
}

#[test]
fn solvable_form_uses_nonresidue() {
    let f = Family::Solvable { i: 1, k: 1 }.form(7);
    assert_eq!(f.coefficients()[2], -7 * least_nonresidue(7) as i64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn point_count_bounds(c in prop::array::uniform6(-6i64..6), pi in 0usize..3, m in 0u32..3) {
        let p = [2u64, 3, 5][pi];
        let r = count_points(&form(c), p, m).unwrap();
        let vol = p.pow(3 * m);
        prop_assert!(r.n <= vol);
        prop_assert!(r.n_star <= r.n);
        if m > 0 {
            prop_assert!(r.n_star <= vol - vol / p.pow(3));
        }
        prop_assert_eq!((r.n, r.n_star), naive(c, p, m));
    }

    #[test]
    fn recovered_counts_are_integers(fi in 0usize..9, pi in 0usize..4) {
        let fam = Family::CATALOG[fi];
        let p = [2u64, 3, 5, 7][pi];
        prop_assume!(fam.validity().holds(p));
        let z = closed_form(fam).unwrap().at_prime(p).unwrap();
        let t = RationalFunction::var(Var::T);
        let w = RationalFunction::one().sub(&t.mul(&z)).div(&rf("1 - T")).unwrap();
        let s = cotype_zeta::ratfun::expand(&w, &[], &[Var::T], 6).unwrap();
        for (k, v) in s {
            let n: Q = v * Q::from_integer((p as i64).pow(3 * k[0]).into());
            prop_assert!(n.is_integer() && n >= q(0));
        }
    }
}

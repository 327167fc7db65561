use cotype_zeta::arith::PrimeValidity;
use cotype_zeta::cotype::*;
use cotype_zeta::igusa::{closed_form, Family};
use cotype_zeta::liealg::LieAlgebra;
use cotype_zeta::ratfun::{q, rf, series_coefficients, Monomial, Polynomial, RationalFunction, Var};
use num_traits::Signed;
use proptest::prelude::*;

fn y() -> Monomial {
    Monomial::var(Var::T, 1)
}

fn poly(s: &str) -> Polynomial {
    rf(s).as_polynomial().unwrap().clone()
}

#[test]
fn gaussian_binomials() {
    assert_eq!(gaussian_binomial(2, 1, &y()).unwrap(), poly("1 + T"));
    assert_eq!(gaussian_binomial(7, 0, &y()).unwrap(), poly("1"));
    assert_eq!(gaussian_binomial(4, 2, &y()).unwrap(), poly("1 + T + 2*T^2 + T^3 + T^4"));
    assert!(gaussian_binomial(2, 3, &y()).is_err());
    assert!(gaussian_binomial(-1, 0, &y()).is_err());
    // the defining quotient of products, divided out by hand
    let num = rf("(1 - T^5)*(1 - T^4)");
    let den = rf("(1 - T)*(1 - T^2)");
    assert_eq!(num.div(&den).unwrap(), RationalFunction::from_poly(gaussian_binomial(5, 2, &y()).unwrap()));
}

#[test]
fn gaussian_multinomials() {
    assert_eq!(gaussian_multinomial(3, &[], &y()).unwrap(), poly("1"));
    assert_eq!(gaussian_multinomial(3, &[1], &y()).unwrap(), poly("1 + T + T^2"));
    assert_eq!(gaussian_multinomial(3, &[1, 2], &y()).unwrap(), poly("(1 + T + T^2)*(1 + T)"));
    assert!(gaussian_multinomial(3, &[3], &y()).is_err());
}

#[test]
fn free_module_formulas() {
    assert_eq!(cotype_zeta_free(1).unwrap().value, rf("1/(1 - Y1)"));
    assert_eq!(cotype_zeta_free(2).unwrap().value, rf("(1 - Y1^2)/((1 - Y1)*(1 - X*Y1)*(1 - Y1*Y2))"));
    assert_eq!(
        cotype_zeta_free(3).unwrap().value,
        rf("(1 + Y1 + X*Y1 + Y1*Y2 + X*Y1*Y2 + X*Y1^2*Y2)/((1 - X^2*Y1)*(1 - X^2*Y1*Y2)*(1 - Y1*Y2*Y3))")
    );
    assert!(cotype_zeta_free(0).is_err());
    assert!(cotype_zeta_free(6).is_err());
}

#[test]
fn igusa_function_inversion() {
    // Y := T, X_i := Y_i as free symbols
    for d in 1..=4usize {
        let xs: Vec<RationalFunction> = (1..=d).map(|i| RationalFunction::var(Var::Y(i as u8))).collect();
        let w = igusa_function(&y(), &xs).unwrap();
        let mut vars = vec![Var::T];
        vars.extend((1..=d).map(|i| Var::Y(i as u8)));
        let inverted = w.invert_variables(&vars);
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let c2 = (d * (d - 1) / 2) as i32;
        let factor = Monomial::from_pairs(&[(Var::Y(d as u8), 1), (Var::T, -c2)]);
        assert_eq!(inverted, w.mul_monomial(&factor).scale(&q(sign)), "d = {d}");
    }
}

fn pairs() -> Vec<(&'static str, Family, PrimeValidity)> {
    use PrimeValidity::*;
    vec![
        ("H", Family::H, All),
        ("sl2", Family::Sl2Odd, Odd),
        ("sl2", Family::Sl2Two, Fixed(2)),
        ("L1", Family::L1Odd, Odd),
        ("L1", Family::L1Two, Fixed(2)),
        ("L2", Family::L2OneMod4, Residue { modulus: 4, residue: 1 }),
        ("L2", Family::L2ThreeMod4, Residue { modulus: 4, residue: 3 }),
        ("L2", Family::L2Two, Fixed(2)),
    ]
}

#[test]
fn assembly_matches_transcriptions() {
    for (label, fam, class) in pairs() {
        let assembled = assemble_main(label, &closed_form(fam).unwrap(), 0).unwrap();
        let entry = catalog(label, &class).unwrap();
        assert!(assembled.value.equals(&entry.value), "{label} {class}: {}", assembled.value);
    }
    let z = assemble_main("Z3", &closed_form(Family::Zero).unwrap(), 0).unwrap();
    assert_eq!(z.value, cotype_zeta_free(3).unwrap().value);
}

#[test]
fn ai_parts_reassemble() {
    let fams = [
        Family::Zero,
        Family::H,
        Family::Sl2Odd,
        Family::Sl2Two,
        Family::L1Odd,
        Family::L1Two,
        Family::L2ThreeMod4,
        Family::L2Two,
        Family::Solvable { i: 1, k: 3 },
    ];
    for fam in fams {
        for scale in 0..2 {
            let ig = closed_form(fam).unwrap();
            let parts = assemble_ai(&ig, scale).unwrap();
            assert_eq!(parts.empty, RationalFunction::one());
            let main = assemble_main("x", &ig, scale).unwrap();
            assert_eq!(parts.total().unwrap(), main.value, "{fam} scale {scale}");
            if fam != Family::Zero && ig.validity.fixed_prime().is_none() {
                let ratio = parts.one_two.div(&parts.one).unwrap();
                assert_eq!(ratio, rf("(X^-1 + 1)*X^2*Y1*Y2/(1 - X^2*Y1*Y2)"));
            }
        }
    }
}

#[test]
fn univariate_specialization() {
    for fam in [Family::H, Family::Sl2Odd, Family::L1Odd, Family::Solvable { i: 2, k: 2 }] {
        for scale in 0..3 {
            let ig = closed_form(fam).unwrap();
            let w = assemble_main("x", &ig, scale).unwrap().value;
            let t = RationalFunction::var(Var::T);
            let uni = w.substitute(&[(Var::Y(1), t.clone()), (Var::Y(2), t.clone()), (Var::Y(3), t.clone())]).unwrap();
            let zfree = rf("1/((1 - T)*(1 - X*T)*(1 - X^2*T))");
            let z = ig.value.substitute(&[(Var::T, rf("X^2*T"))]).unwrap();
            let kv = zfree.sub(
                &z.mul(&rf("X^2*T").pow(scale as i32 + 1).unwrap())
                    .div(&rf("(1 - X^2*T)*(1 - X^2*T^2)*(1 - X^-1)"))
                    .unwrap(),
            );
            assert_eq!(uni, kv, "{fam} scale {scale}");
            assert_eq!(corank_specialize(&w, 3).unwrap(), kv);
        }
    }
}

#[test]
fn functional_equations() {
    for d in 1..=5 {
        let r = functional_equation_check(&cotype_zeta_free(d).unwrap(), d).unwrap();
        assert!(r.holds, "free rank {d}");
        assert!(r.witness.is_zero());
    }
    for label in ["H", "sl2", "L1", "L2"] {
        for f in catalog_entries(label).unwrap() {
            if f.validity.fixed_prime().is_some() {
                assert!(matches!(functional_equation_check(&f, 3), Err(cotype_zeta::Error::FixedPrime(_))));
            } else {
                assert!(functional_equation_check(&f, 3).unwrap().holds, "{label} {}", f.validity);
            }
        }
    }
    let bare = LocalFormula::new(rf("1/(1 - X*Y1)"), "bare", PrimeValidity::All);
    let r = functional_equation_check(&bare, 1).unwrap();
    assert!(!r.holds);
    assert!(!r.witness.is_zero());
}

#[test]
fn corank_examples() {
    let z3 = cotype_zeta_free(3).unwrap().value;
    assert_eq!(corank_specialize(&z3, 1).unwrap(), rf("(1 + (1 + X)*T)/(1 - X^2*T)"));
    assert_eq!(corank_specialize(&z3, 3).unwrap(), rf("1/((1 - T)*(1 - X*T)*(1 - X^2*T))"));
    let h = catalog("H", &PrimeValidity::All).unwrap().value;
    assert_eq!(
        corank_specialize(&h, 3).unwrap(),
        rf("(1 - X^3*T^3)/((1 - T)*(1 - X*T)*(1 - X^2*T^2)*(1 - X^3*T^2))")
    );
}

#[test]
fn rank_two_local_factor() {
    let w = catalog("rank2-nonabelian", &PrimeValidity::All).unwrap().value;
    let euler = rf("1/(1 - Y1)")
        .mul(&rf("1/(1 - X*Y1)"))
        .mul(&rf("1/(1 - Y1*Y2)"))
        .mul(&rf("1 - Y1^2"));
    assert_eq!(w, euler);
    assert!(catalog("nope", &PrimeValidity::All).is_err());
    assert!(catalog("sl2", &PrimeValidity::All).is_err());
}

#[test]
fn series_are_counts_on_the_chain() {
    for label in CATALOG_LABELS {
        for f in catalog_entries(label).unwrap() {
            let d = f.rank().max(1);
            for p in [2u64, 3, 5, 7] {
                if !f.validity.holds(p) {
                    continue;
                }
                let bound = if d == 3 { 8 } else { 10 };
                let c = series_coefficients(&f.value, p, bound, d).unwrap();
                for (k, v) in c {
                    assert!(v.is_integer() && !v.is_negative(), "{label} p={p} {k:?}");
                    let chain = k.windows(2).all(|w| w[0] >= w[1]);
                    if !chain {
                        assert_eq!(v, q(0), "{label} p={p} {k:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn routing() {
    let abelian = LieAlgebra::abelian();
    match route(&abelian, None) {
        Route::Formula(f) => assert_eq!(f.value, cotype_zeta_free(3).unwrap().value),
        r => panic!("{r:?}"),
    }
    let five_h = LieAlgebra::new([0, 0, 5], [0, 0, 0], [0, 0, 0]).unwrap();
    let h = assemble_main("x", &closed_form(Family::H).unwrap(), 0).unwrap().value;
    match route(&five_h, Some(3)) {
        Route::Formula(f) => assert_eq!(f.value, h),
        r => panic!("{r:?}"),
    }
    // p | 5 shifts the Igusa factor by T
    match route(&five_h, Some(5)) {
        Route::Formula(f) => {
            let shifted = assemble_main("x", &closed_form(Family::H).unwrap(), 1).unwrap();
            assert_eq!(f.value, shifted.value.substitute_values(&[(Var::X, q(5))]).unwrap());
        }
        r => panic!("{r:?}"),
    }
    // f = 2 x2^2 + x3^2, discriminant -8
    let l = LieAlgebra::new([0, 0, 1], [0, -2, 0], [0, 0, 0]).unwrap();
    let split = assemble_main("x", &closed_form(Family::L1Odd).unwrap(), 0).unwrap().value;
    let inert = assemble_main("x", &closed_form(Family::L2ThreeMod4).unwrap(), 0).unwrap().value;
    match (route(&l, Some(3)), route(&l, Some(5))) {
        (Route::Formula(a), Route::Formula(b)) => {
            assert_eq!(a.value, split);
            assert_eq!(b.value, inert);
        }
        r => panic!("{r:?}"),
    }
    assert!(matches!(route(&l, Some(2)), Route::NoFormula { p: 2, .. }));
    match route(&l, None) {
        Route::Formula(f) => {
            assert!(f.value.involves(Var::C));
            assert_eq!(f.validity, PrimeValidity::Coprime(2));
        }
        r => panic!("{r:?}"),
    }
    match route(&LieAlgebra::catalog("L2").unwrap(), Some(7)) {
        Route::Formula(f) => assert_eq!(f.validity, PrimeValidity::Residue { modulus: 4, residue: 3 }),
        r => panic!("{r:?}"),
    }
}

#[test]
fn serialization_round_trip() {
    for label in CATALOG_LABELS {
        for f in catalog_entries(label).unwrap() {
            let text = f.to_string();
            assert!(text.starts_with(&format!("algebra={label}\nprime_validity=")));
            let back: LocalFormula = text.parse().unwrap();
            assert_eq!(back, f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gaussian_binomial_identities(a in 0i64..9, b in 0i64..9) {
        prop_assume!(b <= a);
        let g = gaussian_binomial(a, b, &y()).unwrap();
        prop_assert_eq!(&g, &gaussian_binomial(a, a - b, &y()).unwrap());
        let at_one = g.eval_partial(&[(Var::T, q(1))]).unwrap().as_constant().unwrap();
        let binom = (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1));
        prop_assert_eq!(at_one, q(binom));
        if a > 0 && b > 0 && b < a {
            let lhs = &gaussian_binomial(a - 1, b - 1, &y()).unwrap()
                + &gaussian_binomial(a - 1, b, &y()).unwrap().shift(&y().pow(b as i32));
            prop_assert_eq!(g, lhs);
        }
    }

    #[test]
    fn corank_three_is_the_diagonal(fi in 0usize..8) {
        let (label, _, class) = pairs()[fi];
        let w = catalog(label, &class).unwrap().value;
        let t = RationalFunction::var(Var::T);
        let direct = w.substitute(&[(Var::Y(1), t.clone()), (Var::Y(2), t.clone()), (Var::Y(3), t)]).unwrap();
        prop_assert_eq!(corank_specialize(&w, 3).unwrap(), direct);
    }
}

//! Local cotype zeta functions: free modules, the rank-3 assembly from an
//! Igusa zeta function, the built-in catalog and the functional equation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{kronecker, valuation, PrimeValidity};
use crate::error::{Error, Result};
use crate::igusa::{closed_form, Family, IgusaClosedForm};
use crate::liealg::{classify, LieAlgebra};
use crate::ratfun::{mono, q, rf, Monomial, Polynomial, RationalFunction, Var, MAX_DIM, Q};

/// Largest free rank accepted by [`cotype_zeta_free`].
pub const MAX_FREE_RANK: usize = MAX_DIM;

/// Labels understood by [`catalog`].
pub const CATALOG_LABELS: [&str; 8] = ["Z3", "H", "sl2", "L1", "L2", "Z1", "Z2", "rank2-nonabelian"];

/// A local cotype zeta function with its provenance.
///
/// The coefficient of `Y1^c1 Y2^c2 Y3^c3` at `X = p` counts subalgebras of
/// cotype `(p^c1, p^c2, p^c3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFormula {
    pub value: RationalFunction,
    pub algebra: String,
    pub validity: PrimeValidity,
    pub scale: u32,
}

impl LocalFormula {
    pub fn new(value: RationalFunction, algebra: &str, validity: PrimeValidity) -> Self {
        LocalFormula { value, algebra: algebra.to_string(), validity, scale: 0 }
    }

    /// Number of `Y` variables in use.
    pub fn rank(&self) -> usize {
        self.value
            .variables()
            .iter()
            .filter_map(|v| match v {
                Var::Y(i) => Some(*i as usize),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// The formula at a concrete prime: `X := p` and, if present, `C := chi`.
    pub fn at_prime(&self, p: u64) -> Result<RationalFunction> {
        if !self.validity.holds(p) {
            return Err(Error::Domain(format!(
                "formula for {} is valid for {} only, not p = {p}",
                self.algebra, self.validity
            )));
        }
        if self.value.involves(Var::C) {
            return Err(Error::VariableMismatch(format!(
                "formula for {} still depends on the character value C",
                self.algebra
            )));
        }
        self.value.substitute_values(&[(Var::X, q(p as i64))])
    }
}

impl fmt::Display for LocalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra={}", self.algebra)?;
        writeln!(f, "prime_validity={}", self.validity)?;
        writeln!(f, "scale={}", self.scale)?;
        write!(f, "{}", self.value)
    }
}

impl FromStr for LocalFormula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (mut algebra, mut validity, mut scale, mut value) = (None, None, 0u32, None);
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(v) = line.strip_prefix("algebra=") {
                algebra = Some(v.to_string());
            } else if let Some(v) = line.strip_prefix("prime_validity=") {
                validity = Some(v.parse::<PrimeValidity>()?);
            } else if let Some(v) = line.strip_prefix("scale=") {
                scale = v.parse().map_err(|_| Error::InvalidInput(format!("bad scale `{v}`")))?;
            } else if value.is_none() {
                value = Some(line.parse::<RationalFunction>()?);
            } else {
                return Err(Error::InvalidInput(format!("unexpected line `{line}`")));
            }
        }
        Ok(LocalFormula {
            value: value.ok_or_else(|| Error::InvalidInput("missing formula line".into()))?,
            algebra: algebra.unwrap_or_else(|| "unnamed".into()),
            validity: validity.unwrap_or(PrimeValidity::All),
            scale,
        })
    }
}

fn binomial_coeffs(a: usize, b: usize) -> Vec<BigInt> {
    // q-Pascal: [a, b] = [a-1, b-1] + Y^b [a-1, b]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=a {
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = vec![BigInt::zero(); k * (n - k) + 1];
            if k > 0 {
                for (i, x) in row[k - 1].iter().enumerate() {
                    c[i] += x;
                }
            }
            if k < n {
                for (i, x) in row[k].iter().enumerate() {
                    c[i + k] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(b)
}

/// Gaussian binomial `[a choose b]` evaluated at the monomial `y`.
pub fn gaussian_binomial(a: i64, b: i64, y: &Monomial) -> Result<Polynomial> {
    if a < 0 || b < 0 || b > a {
        return Err(Error::Domain(format!("gaussian binomial needs 0 <= b <= a, got ({a}, {b})")));
    }
    let c = binomial_coeffs(a as usize, b as usize);
    Ok(Polynomial::from_terms(
        c.into_iter().enumerate().map(|(i, x)| (y.pow(i as i32), Q::from_integer(x))),
    ))
}

/// Gaussian multinomial `[d choose I]` for `I` a subset of `{1..d-1}`.
pub fn gaussian_multinomial(d: usize, subset: &[usize], y: &Monomial) -> Result<Polynomial> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.iter().any(|&i| i == 0 || i >= d) {
        return Err(Error::Domain(format!("subset {subset:?} is not inside 1..{}", d.saturating_sub(1))));
    }
    let mut chain: Vec<usize> = set.into_iter().collect();
    chain.push(d);
    let mut out = Polynomial::one();
    for w in chain.windows(2).rev() {
        out = &out * &gaussian_binomial(w[1] as i64, w[0] as i64, y)?;
    }
    Ok(out)
}

/// The Igusa function `I_d(Y; X_1..X_d)`.
pub fn igusa_function(y: &Monomial, xs: &[RationalFunction]) -> Result<RationalFunction> {
    let d = xs.len();
    if d == 0 {
        return Err(Error::Domain("Igusa function needs d >= 1".into()));
    }
    let one = RationalFunction::one();
    let ratios: Vec<RationalFunction> = xs[..d - 1]
        .iter()
        .map(|x| x.div(&one.sub(x)))
        .collect::<Result<_>>()?;
    let mut sum = RationalFunction::zero();
    for mask in 0u32..(1 << (d - 1)) {
        let subset: Vec<usize> = (0..d - 1).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let mut term = RationalFunction::from_poly(gaussian_multinomial(d, &subset, y)?);
        for &i in &subset {
            term = term.mul(&ratios[i - 1]);
        }
        sum = sum.add(&term);
    }
    sum.div(&one.sub(&xs[d - 1]))
}

/// `Y_1 ... Y_i` as a monomial.
pub fn y_prefix(i: usize) -> Monomial {
    Monomial::from_pairs(&(1..=i).map(|j| (Var::Y(j as u8), 1)).collect::<Vec<_>>())
}

/// Local cotype zeta function of the free module of rank `d`.
pub fn cotype_zeta_free(d: usize) -> Result<LocalFormula> {
    if d == 0 || d > MAX_FREE_RANK {
        return Err(Error::Domain(format!("free rank must be in 1..={MAX_FREE_RANK}, got {d}")));
    }
    let xs: Vec<RationalFunction> = (1..=d)
        .map(|i| RationalFunction::monomial(y_prefix(i).mul(&Monomial::var(Var::X, (i * (d - i)) as i32))))
        .collect();
    let w = igusa_function(&Monomial::var(Var::X, -1), &xs)?.reduce();
    Ok(LocalFormula::new(w, &format!("Z{d}"), PrimeValidity::All))
}

fn correction_denominator() -> Vec<Polynomial> {
    vec![
        Polynomial::one_minus(mono(&[(Var::X, 2), (Var::Y(1), 1)])),
        Polynomial::one_minus(mono(&[(Var::X, 2), (Var::Y(1), 1), (Var::Y(2), 1)])),
        Polynomial::one_minus(mono(&[(Var::X, 2), (Var::Y(1), 2), (Var::Y(2), 1), (Var::Y(3), 1)])),
        Polynomial::one_minus(Monomial::var(Var::X, -1)),
    ]
}

/// `Z_f(s_1 - 2)` times `(X^2 Y1)^scale`: `T := X^2 Y1`.
fn shifted_igusa(igusa: &IgusaClosedForm, scale: u32) -> Result<RationalFunction> {
    if let Some(v) = igusa.value.variables().into_iter().find(|v| !matches!(v, Var::X | Var::T | Var::C)) {
        return Err(Error::VariableMismatch(format!("Igusa zeta function involves {v}, expected X and T only")));
    }
    let x2y1 = mono(&[(Var::X, 2), (Var::Y(1), 1)]);
    let z = igusa.value.substitute(&[(Var::T, RationalFunction::monomial(x2y1))])?;
    Ok(z.mul_monomial(&x2y1.pow(scale as i32)))
}

fn finish(value: RationalFunction, algebra: &str, igusa: &IgusaClosedForm, scale: u32) -> Result<LocalFormula> {
    let value = match igusa.validity.fixed_prime() {
        Some(p) => value.substitute_values(&[(Var::X, q(p as i64))])?,
        None => value,
    };
    Ok(LocalFormula { value: value.reduce(), algebra: algebra.to_string(), validity: igusa.validity, scale })
}

/// Rank-3 local cotype zeta function of `p^scale L` from the Igusa zeta
/// function of its quadratic form.
pub fn assemble_main(algebra: &str, igusa: &IgusaClosedForm, scale: u32) -> Result<LocalFormula> {
    let free = cotype_zeta_free(3)?.value;
    if igusa.family == Family::Zero {
        return Ok(LocalFormula { value: free, algebra: algebra.to_string(), validity: PrimeValidity::All, scale });
    }
    let z = shifted_igusa(igusa, scale)?;
    let mut corr = z
        .mul_monomial(&mono(&[(Var::X, 2), (Var::Y(1), 1)]))
        .mul_poly(&rf("1 + X*Y1*Y2").numerator().clone())
        .mul_poly(&Polynomial::one_minus(mono(&[(Var::X, 1), (Var::Y(1), 2)])));
    for f in correction_denominator() {
        corr = corr.div_poly(&f)?;
    }
    finish(free.sub(&corr), algebra, igusa, scale)
}

/// The four partial sums `A_I` whose total over `1 - Y1 Y2 Y3` is the
/// rank-3 formula.
#[derive(Clone, Debug)]
pub struct AiParts {
    pub empty: RationalFunction,
    pub two: RationalFunction,
    pub one: RationalFunction,
    pub one_two: RationalFunction,
}

impl AiParts {
    pub fn total(&self) -> Result<RationalFunction> {
        self.empty
            .add(&self.two)
            .add(&self.one)
            .add(&self.one_two)
            .div_poly(&Polynomial::one_minus(y_prefix(3)))
    }
}

pub fn assemble_ai(igusa: &IgusaClosedForm, scale: u32) -> Result<AiParts> {
    let x2y1y2 = mono(&[(Var::X, 2), (Var::Y(1), 1), (Var::Y(2), 1)]);
    let geo = RationalFunction::geometric(x2y1y2).sub(&RationalFunction::one()); // M/(1-M)
    let two = geo.mul(&rf("X^-2 + X^-1 + 1"));
    let x2y1 = mono(&[(Var::X, 2), (Var::Y(1), 1)]);
    let first = rf("(1 + X + X^2)*Y1").div_poly(&Polynomial::one_minus(x2y1))?;
    let mut second = shifted_igusa(igusa, scale)?
        .mul_monomial(&x2y1)
        .mul_poly(&Polynomial::one_minus(y_prefix(3)))
        .mul_poly(&Polynomial::one_minus(mono(&[(Var::X, 1), (Var::Y(1), 2)])));
    for f in [
        Polynomial::one_minus(Monomial::var(Var::X, -1)),
        Polynomial::one_minus(x2y1),
        Polynomial::one_minus(mono(&[(Var::X, 2), (Var::Y(1), 2), (Var::Y(2), 1), (Var::Y(3), 1)])),
    ] {
        second = second.div_poly(&f)?;
    }
    let one = if igusa.family == Family::Zero { first } else { first.sub(&second) };
    let one_two = geo.mul(&rf("X^-1 + 1")).mul(&one);
    let fix = |w: RationalFunction| -> Result<RationalFunction> {
        match igusa.validity.fixed_prime() {
            Some(p) => w.substitute_values(&[(Var::X, q(p as i64))]),
            None => Ok(w),
        }
    };
    Ok(AiParts {
        empty: RationalFunction::one(),
        two: fix(two)?,
        one: fix(one)?,
        one_two: fix(one_two)?,
    })
}

const H_NUM: &str = "1 + Y1 + X*Y1 + X^2*Y1^2 + Y1*Y2 + X*Y1*Y2 + X*Y1^2*Y2 + X^2*Y1^2*Y2 \
    - X^2*Y1^3*Y2*Y3 - X^3*Y1^3*Y2*Y3 - X^3*Y1^4*Y2*Y3 - X^4*Y1^4*Y2*Y3 - X^2*Y1^3*Y2^2*Y3 \
    - X^3*Y1^4*Y2^2*Y3 - X^4*Y1^4*Y2^2*Y3 - X^4*Y1^5*Y2^2*Y3";
const H_DEN: &str = "(1 - X^3*Y1^2)*(1 - X^2*Y1*Y2)*(1 - X^2*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3)";

const SL2_ODD_NUM: &str = "1 + Y1 + Y1*Y2*(1 + X) - X^2*Y1^4*Y2^2*Y3 - X*Y1^3*Y2*Y3*(1 + X + X*Y2)";
const SL2_ODD_DEN: &str = "(1 - X*Y1)*(1 - X^2*Y1*Y2)*(1 - X^2*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3)";
const SL2_TWO: &str = "(1 + Y1 + 6*Y1^2 + 3*Y1*Y2 + 12*Y1^3*Y2 - 12*Y1^3*Y2*Y3 - 4*Y1^3*Y2^2*Y3 \
    - 16*Y1^4*Y2^2*Y3) / ((1 - 2*Y1)*(1 - 4*Y1*Y2)*(1 - 4*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3))";

const SPLIT_NUM: &str = "1 + Y1 - 2*X*Y1^2 + Y1*Y2 + X*Y1*Y2 - X*Y1^2*Y2 - X^2*Y1^3*Y2 \
    - X*Y1^2*Y2*Y3 - X^2*Y1^3*Y2*Y3 + X^2*Y1^4*Y2*Y3 + X^3*Y1^4*Y2*Y3 \
    - 2*X^2*Y1^3*Y2^2*Y3 + X^3*Y1^4*Y2^2*Y3 + X^3*Y1^5*Y2^2*Y3";
const SPLIT_DEN: &str = "(1 - X*Y1)^2*(1 - X^2*Y1*Y2)*(1 - X^2*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3)";
const L1_TWO: &str = "(1 - Y1 + 4*Y1^2 + 4*Y1^3 - 16*Y1^4 + 3*Y1*Y2 - 6*Y1^2*Y2 + 12*Y1^3*Y2 \
    + 8*Y1^4*Y2 - 32*Y1^5*Y2 - 12*Y1^3*Y2*Y3 + 8*Y1^4*Y2*Y3 + 16*Y1^5*Y2*Y3 - 4*Y1^3*Y2^2*Y3 \
    - 8*Y1^4*Y2^2*Y3 + 32*Y1^6*Y2^2*Y3) / ((1 - 2*Y1)^2*(1 - 4*Y1*Y2)*(1 - 4*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3))";

const L2_THREE_NUM: &str = "1 + Y1 + Y1*Y2 + X*Y1*Y2 + X*Y1^2*Y2 - X^2*Y1^3*Y2 + X*Y1^2*Y2*Y3 \
    - X^2*Y1^3*Y2*Y3 - X^2*Y1^4*Y2*Y3 - X^3*Y1^4*Y2*Y3 - X^3*Y1^4*Y2^2*Y3 - X^3*Y1^5*Y2^2*Y3";
const L2_THREE_DEN: &str = "(1 - X^2*Y1^2)*(1 - X^2*Y1*Y2)*(1 - X^2*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3)";
const L2_TWO: &str = "(1 + Y1 - 2*Y1^2 + 3*Y1*Y2 - 4*Y1^3*Y2 - 4*Y1^3*Y2*Y3 - 4*Y1^3*Y2^2*Y3) \
    / ((1 - 2*Y1)*(1 - 4*Y1*Y2)*(1 - 4*Y1^2*Y2*Y3)*(1 - Y1*Y2*Y3))";

fn quotient(num: &str, den: &str) -> RationalFunction {
    rf(&format!("({num}) / ({den})"))
}

/// Every transcribed formula for `label`, one per prime class.
pub fn catalog_entries(label: &str) -> Result<Vec<LocalFormula>> {
    use PrimeValidity::*;
    let e = |w: RationalFunction, v: PrimeValidity| LocalFormula::new(w, label, v);
    Ok(match label {
        "Z3" => vec![e(cotype_zeta_free(3)?.value, All)],
        "Z1" => vec![e(cotype_zeta_free(1)?.value, All)],
        "Z2" | "rank2-nonabelian" => vec![e(cotype_zeta_free(2)?.value, All)],
        "H" => vec![e(quotient(H_NUM, H_DEN), All)],
        "sl2" => vec![e(quotient(SL2_ODD_NUM, SL2_ODD_DEN), Odd), e(rf(SL2_TWO), Fixed(2))],
        "L1" => vec![e(quotient(SPLIT_NUM, SPLIT_DEN), Odd), e(rf(L1_TWO), Fixed(2))],
        "L2" => vec![
            e(quotient(SPLIT_NUM, SPLIT_DEN), Residue { modulus: 4, residue: 1 }),
            e(quotient(L2_THREE_NUM, L2_THREE_DEN), Residue { modulus: 4, residue: 3 }),
            e(rf(L2_TWO), Fixed(2)),
        ],
        _ => return Err(Error::UnknownAlgebra(label.to_string())),
    })
}

/// The catalog entry for `label` with exactly the given prime class.
pub fn catalog(label: &str, class: &PrimeValidity) -> Result<LocalFormula> {
    catalog_entries(label)?
        .into_iter()
        .find(|f| f.validity == *class)
        .ok_or_else(|| Error::UnknownAlgebra(format!("{label} has no formula for prime class {class}")))
}

/// The catalog entry for `label` that applies at `p`.
pub fn catalog_for_prime(label: &str, p: u64) -> Result<LocalFormula> {
    catalog_entries(label)?
        .into_iter()
        .find(|f| f.validity.holds(p))
        .ok_or_else(|| Error::UnknownAlgebra(format!("{label} has no formula at p = {p}")))
}

/// Outcome of a functional-equation check.
#[derive(Clone, Debug)]
pub struct FeCheck {
    pub holds: bool,
    /// `w(1/X, 1/Y) - (-1)^d X^{d(d-1)/2} Y1..Yd w`, zero when the check passes.
    pub witness: RationalFunction,
}

pub fn functional_equation_check(w: &LocalFormula, d: usize) -> Result<FeCheck> {
    if let Some(p) = w.validity.fixed_prime() {
        return Err(Error::FixedPrime(format!(
            "formula for {} is specific to p = {p}; the functional equation concerns formulas symbolic in X",
            w.algebra
        )));
    }
    if d == 0 || d > MAX_DIM {
        return Err(Error::Domain(format!("rank must be in 1..={MAX_DIM}")));
    }
    let mut vars = vec![Var::X];
    vars.extend((1..=d).map(|i| Var::Y(i as u8)));
    let lhs = w.value.invert_variables(&vars);
    let factor = y_prefix(d).mul(&Monomial::var(Var::X, (d * (d - 1) / 2) as i32));
    let mut rhs = w.value.mul_monomial(&factor);
    if d % 2 == 1 {
        rhs = rhs.neg();
    }
    let holds = lhs.equals(&rhs);
    let witness = if holds { RationalFunction::zero() } else { lhs.sub(&rhs) };
    Ok(FeCheck { holds, witness })
}

/// Corank-at-most-`m` part: `Y_i := T` for `i <= m` and `Y_i := 0` above.
pub fn corank_specialize(w: &RationalFunction, m: usize) -> Result<RationalFunction> {
    if m == 0 || m > MAX_DIM {
        return Err(Error::Domain(format!("corank must be in 1..={MAX_DIM}, got {m}")));
    }
    let t = RationalFunction::var(Var::T);
    let bindings: Vec<(Var, RationalFunction)> = (1..=MAX_DIM)
        .map(|i| (Var::Y(i as u8), if i <= m { t.clone() } else { RationalFunction::zero() }))
        .collect();
    Ok(w.substitute(&bindings)?.reduce())
}

/// Result of routing an algebra to a formula.
#[derive(Clone, Debug)]
pub enum Route {
    Formula(LocalFormula),
    /// The prime is bad for the algebra's form and no transcription covers it;
    /// the census is the fallback.
    NoFormula { p: u64, reason: String },
}

fn radical(primes: &BTreeSet<u64>) -> PrimeValidity {
    let n: u64 = primes.iter().product();
    if n == 1 {
        PrimeValidity::All
    } else {
        PrimeValidity::Coprime(n)
    }
}

/// Picks the formula for `l` at `p`, or the formula valid for almost all
/// primes when `p` is `None`.
pub fn route(l: &LieAlgebra, p: Option<u64>) -> Route {
    match route_inner(l, p) {
        Ok(r) => r,
        Err(e) => Route::NoFormula { p: p.unwrap_or(0), reason: e.to_string() },
    }
}

fn route_inner(l: &LieAlgebra, p: Option<u64>) -> Result<Route> {
    if let Some(label) = l.catalog_label() {
        let entries = catalog_entries(label)?;
        let pick = match p {
            Some(p) => entries.into_iter().find(|f| f.validity.holds(p)),
            None => entries.into_iter().find(|f| f.validity.fixed_prime().is_none()),
        };
        if let Some(f) = pick {
            return Ok(Route::Formula(f));
        }
    }
    let label = l.name().unwrap_or("custom").to_string();
    let form = l.quadratic_form();
    let class = classify(&form);
    let (family, mut bad) = match class.rank {
        0 => {
            let mut f = cotype_zeta_free(3)?;
            f.algebra = label;
            return Ok(Route::Formula(f));
        }
        1 => {
            // f = a l^2 with l primitive: unit times x3^2 after scaling out p^v
            let a = class.square_coefficient.unwrap_or(1);
            let mut bad = BTreeSet::new();
            let mut n = a.unsigned_abs();
            let mut d = 2;
            while d * d <= n {
                while n % d == 0 {
                    bad.insert(d);
                    n /= d;
                }
                d += 1;
            }
            if n > 1 {
                bad.insert(n);
            }
            if let Some(p) = p {
                let v = valuation(a as i128, p);
                let igusa = closed_form(Family::H)?;
                let mut f = assemble_main(&label, &igusa, v)?;
                if v > 0 {
                    f.value = f.value.substitute_values(&[(Var::X, q(p as i64))])?;
                    f.validity = PrimeValidity::Fixed(p);
                }
                return Ok(Route::Formula(f));
            }
            (Family::H, bad)
        }
        3 => (Family::Sl2Odd, class.bad_primes.clone()),
        _ => {
            let d = class.rank2_discriminant.unwrap_or(0);
            let square = d >= 0 && ((d as f64).sqrt().round() as i64).pow(2) == d;
            let fam = if square { Family::L1Odd } else { Family::Character { d } };
            (fam, class.bad_primes.clone())
        }
    };
    if let Some(p) = p {
        if bad.contains(&p) {
            return Ok(Route::NoFormula {
                p,
                reason: format!("p = {p} divides the discriminant data of the form {form}; use the census"),
            });
        }
    }
    if matches!(family, Family::Sl2Odd | Family::L1Odd | Family::Character { .. }) {
        bad.insert(2);
    }
    let igusa = closed_form(family)?;
    let mut f = assemble_main(&label, &igusa, 0)?;
    f.validity = radical(&bad);
    if let (Family::Character { d }, Some(p)) = (family, p) {
        f.value = f.value.substitute_values(&[(Var::C, q(kronecker(d, p) as i64))])?.reduce();
    }
    Ok(Route::Formula(f))
}

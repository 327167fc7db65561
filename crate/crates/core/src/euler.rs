//! Euler products of corank-restricted zeta functions.
//!
//! A local factor `w(X, T)` (with `X := p`, `T := p^{-s}`) is written as a
//! product of binomials `(1 - C^c X^a T^b)^{-k}` times a residual whose Euler
//! product converges absolutely at the rightmost pole. Each binomial is a
//! global `zeta(bs - a)^k`, or `L(bs - a, chi)^k` for odd `c`, so the pole,
//! its order and the leading constant can be read off.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{kronecker, kronecker_symbol, primes_up_to, PrimeValidity};
use crate::cotype::{assemble_main, catalog, corank_specialize, route, Route};
use crate::error::{Error, Result};
use crate::igusa::{closed_form, Family};
use crate::liealg::{classify, LieAlgebra};
use crate::ratfun::{
    as_univariate, cyclotomic_split, cyclotomics_to_binomials, q, q_to_f64, Monomial, Polynomial, RationalFunction,
    Var, NVARS, Q,
};

/// Default bound on the primes in truncated Euler products.
pub const DEFAULT_PRIME_BOUND: u64 = 100_000;

const SERIES_ORDER: i64 = 12;
const MAX_EXTRACTIONS: usize = 64;

/// `zeta(bs - a)^power`, or an `L`-function when the `C` exponent is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaFactor {
    pub a: i32,
    pub b: u32,
    /// Exponent of `C`: 0 is `zeta`, odd is `L(., chi)`, even is `zeta` with
    /// the Euler factors at `p | D` removed.
    pub c: u32,
    pub power: i32,
}

impl ZetaFactor {
    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs(&[(Var::C, self.c as i32), (Var::X, self.a), (Var::T, self.b as i32)])
    }

    /// `(a + 1)/b`: the pole of `zeta(bs - a)`.
    pub fn abscissa(&self) -> Q {
        Q::new((self.a + 1).into(), (self.b as i64).into())
    }

    pub fn is_principal(&self) -> bool {
        self.c % 2 == 0
    }

    /// Character value attached to this factor at `p`.
    fn chi_at(&self, chi: i8) -> f64 {
        if self.c == 0 {
            1.0
        } else {
            (chi as f64).powi(self.c as i32)
        }
    }
}

impl fmt::Display for ZetaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.c, self.c % 2) {
            (0, _) => "zeta",
            (_, 1) => "L_chi",
            _ => "zeta_D",
        };
        let s = if self.b == 1 { "s".to_string() } else { format!("{}s", self.b) };
        let arg = match self.a {
            0 => s,
            a if a > 0 => format!("{s}-{a}"),
            a => format!("{s}+{}", -a),
        };
        write!(f, "{name}({arg})")?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

/// `w = residual * prod (1 - M_f)^{-power_f}`.
#[derive(Clone, Debug)]
pub struct ZetaFactorization {
    pub factors: Vec<ZetaFactor>,
    pub residual: RationalFunction,
}

impl ZetaFactorization {
    /// Rebuilds the local factor; equals the input of the extraction.
    pub fn reassemble(&self) -> RationalFunction {
        let mut acc = BTreeMap::new();
        for f in &self.factors {
            acc.insert(f.monomial(), -f.power);
        }
        self.residual.mul(&binomial_product(&acc)).reduce()
    }

    /// Rightmost pole: the largest abscissa among principal factors with
    /// positive power.
    pub fn sigma0(&self) -> Option<Q> {
        self.factors
            .iter()
            .filter(|f| f.is_principal() && f.power > 0)
            .map(|f| f.abscissa())
            .max()
    }

    /// Order of the pole at [`sigma0`](Self::sigma0).
    pub fn order(&self) -> i32 {
        let Some(s) = self.sigma0() else { return 0 };
        self.factors
            .iter()
            .filter(|f| f.is_principal() && f.abscissa() == s)
            .map(|f| f.power)
            .sum()
    }
}

impl fmt::Display for ZetaFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|z| z.to_string()).collect();
        write!(f, "{} * prod_p ({})", parts.join(" * "), self.residual)
    }
}

/// `prod (1 - M)^{k}` over the map entries.
fn binomial_product(acc: &BTreeMap<Monomial, i32>) -> RationalFunction {
    let mut num = Polynomial::one();
    let mut den = Vec::new();
    for (m, &k) in acc {
        let f = Polynomial::one_minus(*m);
        match k.cmp(&0) {
            std::cmp::Ordering::Greater => num = &num * &f.pow(k as u32),
            std::cmp::Ordering::Less => den.push((f, (-k) as u32)),
            std::cmp::Ordering::Equal => {}
        }
    }
    RationalFunction::from_parts(num, den).expect("binomials are non-zero")
}

fn t_degree(m: &Monomial) -> i32 {
    m.exp(Var::T)
}

/// Splits `f = g(M)` into binomials `(1 - M^e)^{k_e}` when `g` is a product
/// of cyclotomic polynomials up to a constant.
fn binomial_split(f: &Polynomial) -> Option<Vec<(Monomial, i32)>> {
    let (m, g) = as_univariate(f)?;
    if t_degree(&m) <= 0 || g.iter().any(|c| !c.is_integer()) {
        return None;
    }
    let (parts, cofactor) = cyclotomic_split(&g);
    if cofactor.len() != 1 {
        return None;
    }
    Some(
        cyclotomics_to_binomials(&parts)
            .into_iter()
            .map(|(e, k)| (m.pow(e as i32), k as i32))
            .collect(),
    )
}

/// Power series of `w` in `T` to order [`SERIES_ORDER`], coefficients kept
/// symbolic in `X` and `C`.
fn t_series(w: &RationalFunction) -> Result<Polynomial> {
    let vars = [Var::T];
    let mut acc = w.numerator().truncate(&vars, SERIES_ORDER);
    for (f, k) in w.den_factors() {
        let f0 = f.homogeneous_part(&vars, 0);
        let c0 = f0
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Shape(format!("denominator factor ({f}) is not 1 + O(T)")))?;
        let rest = (f - &f0).scale(&-c0.recip());
        // 1/f = c0^{-1} sum_j rest^j
        let mut inv = Polynomial::one();
        let mut power = Polynomial::one();
        for _ in 0..SERIES_ORDER {
            power = power.mul_truncated(&rest, &vars, SERIES_ORDER);
            if power.is_zero() {
                break;
            }
            inv = &inv + &power;
        }
        let inv = inv.scale(&c0.recip());
        for _ in 0..k {
            acc = acc.mul_truncated(&inv, &vars, SERIES_ORDER);
        }
    }
    Ok(acc)
}

/// Writes `w(X, T)` as zeta and `L` factors times a residual whose Euler
/// product converges absolutely at the pole.
///
/// Denominator binomials are extracted first. Then, while some term
/// `k X^a T^b` of the residual's expansion has `(a + 1)/b` at or right of
/// the pole, `(1 - X^a T^b)^k` is multiplied in. Finally a numerator made of
/// binomials alone is moved into inverse zeta factors.
pub fn extract_zeta_factors(w: &RationalFunction) -> Result<ZetaFactorization> {
    let w = w.reduce();
    if let Some(v) = w.variables().into_iter().find(|v| !matches!(v, Var::X | Var::T | Var::C)) {
        return Err(Error::VariableMismatch(format!("{v} in a univariate local factor")));
    }
    let mut acc: BTreeMap<Monomial, i32> = BTreeMap::new();
    for (f, k) in w.den_factors() {
        let split = binomial_split(f)
            .ok_or_else(|| Error::Shape(format!("denominator factor ({f}) is not a product of binomials in T")))?;
        for (m, e) in split {
            *acc.entry(m).or_insert(0) += e * k as i32;
        }
    }
    acc.retain(|_, k| *k != 0);
    let mut residual = w.mul(&binomial_product(&acc)).reduce();
    if !residual.is_polynomial() {
        return Err(Error::Internal(format!("denominator left after extraction: {residual}")));
    }

    let sigma0 = |acc: &BTreeMap<Monomial, i32>| -> Option<Q> {
        acc.iter()
            .filter(|(m, k)| **k > 0 && m.exp(Var::C) % 2 == 0)
            .map(|(m, _)| Q::new((m.exp(Var::X) + 1).into(), (t_degree(m) as i64).into()))
            .max()
    };
    let mut done = false;
    for _ in 0..MAX_EXTRACTIONS {
        let series = t_series(&residual)?;
        let head = series.homogeneous_part(&[Var::T], 0);
        if !head.is_one() {
            return Err(Error::Shape(format!("local factor is {head} at T = 0, expected 1")));
        }
        let best = series
            .terms()
            .filter(|(m, _)| t_degree(m) > 0)
            .map(|(m, c)| (Q::new((m.exp(Var::X) + 1).into(), (t_degree(m) as i64).into()), *m, c.clone()))
            .max_by(|x, y| x.0.cmp(&y.0).then(t_degree(&y.1).cmp(&t_degree(&x.1))));
        let Some((abscissa, m, c)) = best else {
            done = true;
            break;
        };
        if sigma0(&acc).is_some_and(|s| abscissa < s) {
            done = true;
            break;
        }
        if !c.is_integer() {
            return Err(Error::Shape(format!("dominant term {c}*{m} has a non-integer coefficient")));
        }
        let k = c.to_integer().to_i32().ok_or_else(|| Error::Shape("coefficient overflow".into()))?;
        let one = BTreeMap::from([(m, k)]);
        residual = residual.mul(&binomial_product(&one)).reduce();
        *acc.entry(m).or_insert(0) += k;
        acc.retain(|_, k| *k != 0);
    }
    if !done {
        return Err(Error::Convergence("dominant-term extraction did not terminate".into()));
    }

    // a numerator that is itself a product of binomials becomes inverse zetas
    if let Some(num) = residual.as_polynomial() {
        if let Some(split) = binomial_split(num) {
            if split.iter().all(|(_, k)| *k > 0) {
                let mut peeled = BTreeMap::new();
                for (m, k) in split {
                    peeled.insert(m, -k);
                    *acc.entry(m).or_insert(0) -= k;
                }
                acc.retain(|_, k| *k != 0);
                residual = residual.mul(&binomial_product(&peeled)).reduce();
            }
        }
    }

    let factors = acc
        .into_iter()
        .map(|(m, power)| ZetaFactor { a: m.exp(Var::X), b: t_degree(&m) as u32, c: m.exp(Var::C) as u32, power })
        .collect();
    Ok(ZetaFactorization { factors, residual })
}

/// Local factors of the corank-restricted zeta function of one algebra.
///
/// `generic` holds at every prime outside `special`; it may contain `C`,
/// read as the Kronecker symbol `(D/p)` for `D = character`.
#[derive(Clone, Debug)]
pub struct EulerData {
    pub algebra: String,
    pub corank: usize,
    pub generic: RationalFunction,
    pub character: Option<i64>,
    pub special: BTreeMap<u64, RationalFunction>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl EulerData {
    pub fn for_algebra(l: &LieAlgebra, m: usize) -> Result<Self> {
        let name = l.catalog_label().map(str::to_string).or_else(|| l.name().map(str::to_string));
        let name = name.unwrap_or_else(|| "custom".into());
        let (generic, character, special) = if l.catalog_label() == Some("L2") {
            // both odd classes in one formula with C = (-4/p)
            let igusa = closed_form(Family::Character { d: -4 })?;
            let generic = assemble_main("L2", &igusa, 0)?.value;
            let two = catalog("L2", &PrimeValidity::Fixed(2))?.value;
            (generic, Some(-4), BTreeMap::from([(2, two)]))
        } else {
            let f = match route(l, None) {
                Route::Formula(f) => f,
                Route::NoFormula { reason, .. } => return Err(Error::NoFormula { p: 0, reason }),
            };
            let character = if f.value.involves(Var::C) {
                Some(classify(&l.quadratic_form()).rank2_discriminant.ok_or_else(|| {
                    Error::Internal("character formula without a binary discriminant".into())
                })?)
            } else {
                None
            };
            let bad = match f.validity {
                PrimeValidity::All => Vec::new(),
                PrimeValidity::Odd => vec![2],
                PrimeValidity::Coprime(n) => prime_factors(n),
                v => return Err(Error::Shape(format!("generic formula valid only for {v}"))),
            };
            let mut special = BTreeMap::new();
            for p in bad {
                match route(l, Some(p)) {
                    Route::Formula(g) => {
                        special.insert(p, g.value.substitute_values(&[(Var::X, q(p as i64))])?);
                    }
                    Route::NoFormula { reason, .. } => return Err(Error::NoFormula { p, reason }),
                }
            }
            (f.value, character, special)
        };
        let generic = corank_specialize(&generic, m)?;
        let special = special
            .into_iter()
            .map(|(p, w)| Ok((p, corank_specialize(&w, m)?)))
            .collect::<Result<_>>()?;
        Ok(EulerData { algebra: name, corank: m, generic, character, special })
    }

    fn chi(&self, p: u64) -> i8 {
        self.character.map_or(1, |d| kronecker(d, p))
    }

    fn point(&self, p: u64, sigma: f64) -> [f64; NVARS] {
        let mut v = [0.0; NVARS];
        v[Var::X.index()] = p as f64;
        v[Var::T.index()] = (p as f64).powf(-sigma);
        v[Var::C.index()] = self.chi(p) as f64;
        v
    }

    /// Residual Euler factor at `p` evaluated at `s = sigma`.
    pub fn residual_at(&self, zf: &ZetaFactorization, p: u64, sigma: f64) -> f64 {
        let v = self.point(p, sigma);
        match self.special.get(&p) {
            None => zf.residual.eval_f64(&v),
            Some(w) => {
                let chi = self.chi(p);
                let mut r = w.eval_f64(&v);
                for f in &zf.factors {
                    let x = f.chi_at(chi) * (p as f64).powi(f.a) * v[Var::T.index()].powi(f.b as i32);
                    r *= (1.0 - x).powi(f.power);
                }
                r
            }
        }
    }
}

/// `zeta(s)` for real `s > 1` by Euler-Maclaurin summation.
pub fn zeta(s: f64) -> Result<f64> {
    if s <= 1.0 || !s.is_finite() {
        return Err(Error::Domain(format!("zeta({s}) needs s > 1")));
    }
    const N: usize = 20;
    // B_{2j} / (2j)!
    const B: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1_307_674_368_000.0,
    ];
    let n = N as f64;
    let mut sum: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s;
    for (j, b) in B.iter().enumerate() {
        let j = j as i32 + 1;
        sum += b * rising * n.powf(-s - (2 * j - 1) as f64);
        rising *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
    }
    Ok(sum)
}

/// `L(s, chi_D)` for the Kronecker character of a discriminant `D` and real
/// `s >= 1`, by partial sums averaged over one period.
pub fn dirichlet_l(s: f64, d: i64) -> Result<f64> {
    if s < 1.0 || !s.is_finite() {
        return Err(Error::Domain(format!("L({s}, chi) needs s >= 1")));
    }
    let k = d.unsigned_abs();
    if k < 3 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::Domain(format!("{d} is not a non-trivial discriminant")));
    }
    let table: Vec<f64> = (0..k).map(|r| kronecker_symbol(d, r) as f64).collect();
    let n = k * 2_000_000u64.div_ceil(k);
    let mut sum = 0.0;
    for i in 1..=n {
        let c = table[(i % k) as usize];
        if c != 0.0 {
            sum += c * (i as f64).powf(-s);
        }
    }
    // Cesaro mean of the next period of partial sums
    let (mut partial, mut mean) = (sum, 0.0);
    for i in n + 1..=n + k {
        mean += partial;
        let c = table[(i % k) as usize];
        if c != 0.0 {
            partial += c * (i as f64).powf(-s);
        }
    }
    Ok(mean / k as f64)
}

/// Location, order and leading constant of the rightmost pole:
/// `Z(s) ~ leading_constant / (s - sigma0)^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleData {
    pub sigma0: Q,
    pub order: u32,
    pub leading_constant: f64,
    /// Estimated absolute error of `leading_constant`.
    pub error: f64,
}

fn discriminant_primes(d: Option<i64>) -> Vec<u64> {
    d.map(|d| prime_factors(d.unsigned_abs())).unwrap_or_default()
}

/// Pole data from a factorization, with the residual Euler product taken
/// over primes up to `bound`.
pub fn pole_data(data: &EulerData, zf: &ZetaFactorization, bound: u64) -> Result<PoleData> {
    if bound < 100 {
        return Err(Error::Domain("prime bound must be at least 100".into()));
    }
    let sigma0 = zf.sigma0().ok_or_else(|| Error::Shape("no pole: every principal factor is inverted".into()))?;
    let order = zf.order();
    if order <= 0 {
        return Err(Error::Shape(format!("pole at {sigma0} cancels")));
    }
    let s0 = q_to_f64(&sigma0);
    let dprimes = discriminant_primes(data.character);

    let mut constant = 1.0;
    for f in &zf.factors {
        let arg = Q::from_integer((f.b as i64).into()) * &sigma0 - Q::from_integer(f.a.into());
        let x = q_to_f64(&arg);
        let value = if f.is_principal() {
            let removed = |s: f64| -> f64 {
                if f.c == 0 {
                    1.0
                } else {
                    dprimes.iter().map(|&p| 1.0 - (p as f64).powf(-s)).product()
                }
            };
            if arg.is_one() {
                removed(1.0) / f.b as f64
            } else if arg > Q::one() {
                zeta(x)? * removed(x)
            } else {
                return Err(Error::Convergence(format!("{f} is evaluated left of its pole")));
            }
        } else {
            let d = data
                .character
                .ok_or_else(|| Error::Internal("L factor without a character".into()))?;
            dirichlet_l(x, d)?
        };
        constant *= value.powi(f.power);
    }

    let primes = primes_up_to(bound);
    let (mut log_full, mut log_half) = (0.0, 0.0);
    for &p in &primes {
        let r = data.residual_at(zf, p, s0);
        if r <= 0.0 || !r.is_finite() {
            return Err(Error::Convergence(format!("residual factor at p = {p} is {r}")));
        }
        log_full += r.ln();
        if p <= bound / 2 {
            log_half += r.ln();
        }
    }
    let drift = (log_full - log_half).abs();
    if drift > 0.05 {
        return Err(Error::Convergence(format!("partial products still move by {drift:.3e} between B/2 and B")));
    }

    // tail: sum_{p > B} p^{-kappa} ~ B^{1-kappa}/((kappa - 1) log B)
    let b = bound as f64;
    let (mut correction, mut uncertain) = (0.0, 0.0);
    for (m, c) in t_series(&zf.residual)?.terms() {
        if t_degree(m) == 0 {
            continue;
        }
        let kappa = t_degree(m) as f64 * s0 - m.exp(Var::X) as f64;
        if kappa <= 1.0 {
            return Err(Error::Internal(format!("residual term {m} diverges at the pole")));
        }
        let tail = q_to_f64(c) * b.powf(1.0 - kappa) / ((kappa - 1.0) * b.ln());
        if m.exp(Var::C) % 2 == 0 {
            correction += tail;
            uncertain += 0.2 * tail.abs();
        } else {
            uncertain += tail.abs();
        }
    }
    let log_total = log_full + correction;
    let leading_constant = constant * log_total.exp();
    let rel = uncertain + 1e-9 + drift * 1e-3;
    Ok(PoleData { sigma0, order: order as u32, leading_constant, error: leading_constant.abs() * rel })
}

/// `N(X) ~ constant * X^sigma0 * (log X)^log_power` for the number of
/// sublattices of index at most `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct Asymptotic {
    pub constant: f64,
    pub error: f64,
    pub sigma0: Q,
    pub log_power: u32,
}

/// Tauberian reading of a pole: `c / (sigma0 (order - 1)!)`.
pub fn asymptotic_count(pole: &PoleData) -> Asymptotic {
    let fact: f64 = (1..pole.order).map(|k| k as f64).product();
    let scale = 1.0 / (q_to_f64(&pole.sigma0) * fact);
    Asymptotic {
        constant: pole.leading_constant * scale,
        error: pole.error * scale,
        sigma0: pole.sigma0.clone(),
        log_power: pole.order - 1,
    }
}

impl fmt::Display for Asymptotic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.8} * X^{}", self.constant, self.sigma0)?;
        match self.log_power {
            0 => Ok(()),
            1 => write!(f, " * log X"),
            k => write!(f, " * (log X)^{k}"),
        }
    }
}

/// Factorization plus pole data for one corank bound.
#[derive(Clone, Debug)]
pub struct CorankAnalysis {
    pub data: EulerData,
    pub factorization: ZetaFactorization,
    pub pole: PoleData,
}

impl CorankAnalysis {
    pub fn asymptotic(&self) -> Asymptotic {
        asymptotic_count(&self.pole)
    }
}

pub fn analyze(l: &LieAlgebra, m: usize, bound: u64) -> Result<CorankAnalysis> {
    let data = EulerData::for_algebra(l, m)?;
    let factorization = extract_zeta_factors(&data.generic)?;
    let pole = pole_data(&data, &factorization, bound)?;
    Ok(CorankAnalysis { data, factorization, pole })
}

/// Proportion of sublattices with cotype corank at most `m`.
#[derive(Clone, Debug)]
pub struct Density {
    pub algebra: String,
    pub corank: usize,
    pub value: f64,
    pub error: f64,
    pub restricted: CorankAnalysis,
    pub full: CorankAnalysis,
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} corank <= {}", self.algebra, self.corank)?;
        writeln!(f, "factors {}", self.restricted.factorization)?;
        writeln!(f, "pole sigma0 = {} order = {}", self.restricted.pole.sigma0, self.restricted.pole.order)?;
        writeln!(f, "count ~ {}", self.restricted.asymptotic())?;
        writeln!(f, "all   ~ {}", self.full.asymptotic())?;
        write!(f, "density {:.6} +- {:.1e}", self.value, self.error)
    }
}

/// Ratio of the leading constants for corank `<= m` and for all sublattices.
pub fn density(l: &LieAlgebra, m: usize, bound: u64) -> Result<Density> {
    if !(1..=3).contains(&m) {
        return Err(Error::Domain(format!("corank must be 1, 2 or 3, got {m}")));
    }
    let full = analyze(l, 3, bound)?;
    let restricted = if m == 3 { full.clone() } else { analyze(l, m, bound)? };
    let (a, b) = (&restricted.pole, &full.pole);
    if a.sigma0 != b.sigma0 || a.order != b.order {
        return Err(Error::Internal(format!(
            "pole ({}, {}) for corank <= {m} differs from ({}, {}) for all sublattices",
            a.sigma0, a.order, b.sigma0, b.order
        )));
    }
    let (value, error) = if m == 3 {
        (1.0, 0.0)
    } else {
        let v = a.leading_constant / b.leading_constant;
        (v, v.abs() * (a.error / a.leading_constant.abs() + b.error / b.leading_constant.abs()))
    };
    Ok(Density { algebra: full.data.algebra.clone(), corank: m, value, error, restricted, full })
}

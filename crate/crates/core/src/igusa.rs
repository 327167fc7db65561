//! Igusa local zeta functions of the ternary forms attached to rank-3 Lie
//! rings: closed forms, exhaustive point counts and the Poincare identity.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::arith::{is_prime, kronecker, least_nonresidue, PrimeValidity};
use crate::error::{Error, Result};
use crate::liealg::QuadraticForm;
use crate::ratfun::{expand, mono, q, rf, Monomial, Polynomial, RationalFunction, Var, Q};

/// Default cap on the work of one point count, measured as `p^{2m}`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Catalogued Igusa families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Zero,
    H,
    Sl2Odd,
    Sl2Two,
    L1Odd,
    L1Two,
    L2OneMod4,
    L2ThreeMod4,
    L2Two,
    /// `x2^2 - p^k rho x3^2` with `rho` a non-residue (`i = 1`) or `1` (`i = 2`).
    Solvable { i: u8, k: u32 },
    /// Irreducible binary forms of discriminant `d`, with `C = (d/p)`.
    Character { d: i64 },
}

impl Family {
    pub const CATALOG: [Family; 9] = [
        Family::Zero,
        Family::H,
        Family::Sl2Odd,
        Family::Sl2Two,
        Family::L1Odd,
        Family::L1Two,
        Family::L2OneMod4,
        Family::L2ThreeMod4,
        Family::L2Two,
    ];

    pub fn validity(&self) -> PrimeValidity {
        match *self {
            Family::Zero | Family::H => PrimeValidity::All,
            Family::Sl2Odd | Family::L1Odd | Family::Solvable { .. } => PrimeValidity::Odd,
            Family::Sl2Two | Family::L1Two | Family::L2Two => PrimeValidity::Fixed(2),
            Family::L2OneMod4 => PrimeValidity::Residue { modulus: 4, residue: 1 },
            Family::L2ThreeMod4 => PrimeValidity::Residue { modulus: 4, residue: 3 },
            Family::Character { d } => {
                if d == -4 {
                    PrimeValidity::All
                } else {
                    PrimeValidity::Coprime(2 * d.unsigned_abs())
                }
            }
        }
    }

    /// A representative form of the family at the prime `p`.
    pub fn form(&self, p: u64) -> QuadraticForm {
        let c = QuadraticForm::from_coefficients;
        match *self {
            Family::Zero => QuadraticForm::zero(),
            Family::H => c([0, 0, 1, 0, 0, 0]),
            Family::Sl2Odd | Family::Sl2Two => c([0, 0, 1, 4, 0, 0]),
            Family::L1Odd | Family::L1Two => c([0, -1, 1, 0, 0, 0]),
            Family::L2OneMod4 | Family::L2ThreeMod4 | Family::L2Two => c([0, 1, 1, 0, 0, 0]),
            Family::Solvable { i, k } => {
                let rho = if i == 1 { least_nonresidue(p) as i64 } else { 1 };
                c([0, 1, -(p as i64).pow(k) * rho, 0, 0, 0])
            }
            Family::Character { d } => {
                if d.rem_euclid(4) == 0 {
                    c([0, 1, -d / 4, 0, 0, 0])
                } else {
                    c([0, 1, (1 - d) / 4, 0, 0, 1])
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Zero => write!(f, "zero"),
            Family::H => write!(f, "H"),
            Family::Sl2Odd => write!(f, "sl2_odd"),
            Family::Sl2Two => write!(f, "sl2_two"),
            Family::L1Odd => write!(f, "L1_odd"),
            Family::L1Two => write!(f, "L1_two"),
            Family::L2OneMod4 => write!(f, "L2_1mod4"),
            Family::L2ThreeMod4 => write!(f, "L2_3mod4"),
            Family::L2Two => write!(f, "L2_two"),
            Family::Solvable { i, k } => write!(f, "solvable({i},{k})"),
            Family::Character { d } => write!(f, "character({d})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownFamily(s.to_string());
        let pair = |inner: &str| -> Result<(i64, i64)> {
            let (a, b) = inner.split_once(',').ok_or_else(unknown)?;
            Ok((a.trim().parse().map_err(|_| unknown())?, b.trim().parse().map_err(|_| unknown())?))
        };
        Ok(match s.trim() {
            "zero" => Family::Zero,
            "H" => Family::H,
            "sl2_odd" => Family::Sl2Odd,
            "sl2_two" => Family::Sl2Two,
            "L1_odd" => Family::L1Odd,
            "L1_two" => Family::L1Two,
            "L2_1mod4" => Family::L2OneMod4,
            "L2_3mod4" => Family::L2ThreeMod4,
            "L2_two" => Family::L2Two,
            t => {
                if let Some(inner) = t.strip_prefix("solvable(").and_then(|r| r.strip_suffix(')')) {
                    let (i, k) = pair(inner)?;
                    if !(1..=2).contains(&i) || k < 0 {
                        return Err(unknown());
                    }
                    Family::Solvable { i: i as u8, k: k as u32 }
                } else if let Some(inner) = t.strip_prefix("character(").and_then(|r| r.strip_suffix(')')) {
                    let d: i64 = inner.trim().parse().map_err(|_| unknown())?;
                    Family::Character { d }
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

/// `Z_f` as a rational function of `X` and `T` (and `C` for the character
/// family) together with the primes it is valid for.
#[derive(Clone, Debug)]
pub struct IgusaClosedForm {
    pub family: Family,
    pub value: RationalFunction,
    pub validity: PrimeValidity,
}

impl IgusaClosedForm {
    /// The value with `C` bound to the character at `p` when present.
    pub fn at_prime(&self, p: u64) -> Result<RationalFunction> {
        let mut vals = vec![(Var::X, q(p as i64))];
        if let Family::Character { d } = self.family {
            vals.push((Var::C, q(kronecker(d, p) as i64)));
        }
        self.value.substitute_values(&vals)
    }
}

fn solvable_value(i: u8, k: u32) -> RationalFunction {
    match (i, k) {
        (1, 0) => rf("(1 - X^-2)/(1 - X^-2*T^2)"),
        (2, 0) => rf("((1 - X^-1)/(1 - X^-1*T))^2"),
        (_, 1) => rf("(1 - X^-1)/(1 - X^-1*T)"),
        _ => {
            let prev = solvable_value(i, k - 2);
            prev.mul_monomial(&mono(&[(Var::X, -1), (Var::T, 2)]))
                .add(&rf("1 - X^-1"))
        }
    }
}

/// Closed form of `Z_f(s)` in `T = p^{-s}`.
pub fn closed_form(family: Family) -> Result<IgusaClosedForm> {
    let value = match family {
        Family::Zero => RationalFunction::zero(),
        Family::H => rf("(1 - X^-1)/(1 - X^-1*T^2)"),
        Family::Sl2Odd => rf("(1 - X^-1)*(1 - X^-3*T)/((1 - X^-3*T^2)*(1 - X^-1*T))"),
        Family::Sl2Two => rf("1/2 + T^2/4*(1 - T/8)/((1 - T^2/8)*(1 - T/2))"),
        Family::L1Odd | Family::L2OneMod4 => rf("((1 - X^-1)/(1 - X^-1*T))^2"),
        Family::L1Two => rf("1/4*(2 - 2*T + T^2)/(1 - T/2)^2"),
        Family::L2ThreeMod4 => rf("(1 - X^-2)/(1 - X^-2*T^2)"),
        Family::L2Two => rf("1/2/(1 - T/2)"),
        Family::Solvable { i, k } => {
            if !(1..=2).contains(&i) {
                return Err(Error::UnknownFamily(family.to_string()));
            }
            solvable_value(i, k)
        }
        Family::Character { .. } => rf("(1 - X^-1)*(1 - C*X^-1)/((1 - X^-1*T)*(1 - C*X^-1*T))"),
    };
    Ok(IgusaClosedForm { family, value, validity: family.validity() })
}

/// Solution counts of `f = 0` modulo `p^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub p: u64,
    pub m: u32,
    pub n: u64,
    /// Solutions with at least one unit coordinate.
    pub n_star: u64,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// Exhaustive count of the solutions of `f(x) = 0` in `(Z/p^m)^3`.
///
/// For every pair `(x1, x2)` the equation is quadratic in `x3` with linear
/// coefficient `b(x1, x2)` and constant `c(x1, x2)`; the number of `x3`
/// is read from a precomputed table indexed by `(b, c)`. Work and memory
/// are `O(p^{2m})`, which is what `budget` bounds.
pub fn count_points_with_budget(f: &QuadraticForm, p: u64, m: u32, budget: u64) -> Result<PointCount> {
    check_prime(p)?;
    if m == 0 {
        return Ok(PointCount { p, m, n: 1, n_star: 1 });
    }
    let qm = p
        .checked_pow(m)
        .filter(|q| q.checked_mul(*q).map_or(false, |w| w <= budget))
        .ok_or_else(|| Error::Budget(format!("p^(2m) = {p}^{} exceeds {budget}", 2 * m)))?;
    let qq = qm as i128;
    let c = f.coefficients();
    let md = |v: i128| v.rem_euclid(qq) as usize;
    let (a33, b1, b2) = (c[2] as i128, c[4] as i128, c[5] as i128);
    let n = qm as usize;
    // table[b * n + c] = #{x3 : a33 x3^2 + b x3 + c = 0}
    let mut all = vec![0u32; n * n];
    let mut unit = vec![0u32; n * n];
    for b in 0..n {
        let row = b * n;
        for x3 in 0..n {
            let x = x3 as i128;
            let v = md(a33 * x * x + b as i128 * x);
            let idx = row + (n - v) % n;
            all[idx] += 1;
            if x3 as u64 % p != 0 {
                unit[idx] += 1;
            }
        }
    }
    let (a11, a22, a12) = (c[0] as i128, c[1] as i128, c[3] as i128);
    let mut total = 0u64;
    let mut star = 0u64;
    for x1 in 0..n {
        let x = x1 as i128;
        for x2 in 0..n {
            let y = x2 as i128;
            let b = md(b1 * x + b2 * y);
            let cc = md(a11 * x * x + a12 * x * y + a22 * y * y);
            let idx = b * n + cc;
            total += all[idx] as u64;
            if x1 as u64 % p != 0 || x2 as u64 % p != 0 {
                star += all[idx] as u64;
            } else {
                star += unit[idx] as u64;
            }
        }
    }
    Ok(PointCount { p, m, n: total, n_star: star })
}

pub fn count_points(f: &QuadraticForm, p: u64, m: u32) -> Result<PointCount> {
    count_points_with_budget(f, p, m, DEFAULT_BUDGET)
}

/// `N_m p^{-3m}` for `m = 0..=levels`.
pub fn poincare_partial(f: &QuadraticForm, p: u64, levels: u32) -> Result<Vec<Q>> {
    (0..=levels)
        .map(|m| {
            let c = count_points(f, p, m)?;
            Ok(Q::new(c.n.into(), (p as u128).pow(3 * m).into()))
        })
        .collect()
}

/// `N*_m p^{-3m}` for `m = 0..=levels`.
pub fn primitive_poincare_partial(f: &QuadraticForm, p: u64, levels: u32) -> Result<Vec<Q>> {
    (0..=levels)
        .map(|m| {
            let c = count_points(f, p, m)?;
            Ok(Q::new(c.n_star.into(), (p as u128).pow(3 * m).into()))
        })
        .collect()
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCheck {
    pub level: u32,
    pub predicted: Q,
    pub counted: Q,
}

impl LevelCheck {
    pub fn matches(&self) -> bool {
        self.predicted == self.counted
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IgusaReport {
    pub family: Family,
    pub p: u64,
    pub levels: Vec<LevelCheck>,
}

impl IgusaReport {
    pub fn all_match(&self) -> bool {
        self.levels.iter().all(LevelCheck::matches)
    }

    pub fn first_mismatch(&self) -> Option<u32> {
        self.levels.iter().find(|l| !l.matches()).map(|l| l.level)
    }
}

fn t_series(w: &RationalFunction, levels: u32) -> Result<Vec<Q>> {
    let c = expand(w, &[], &[Var::T], levels)?;
    Ok((0..=levels).map(|m| c.get(&vec![m]).cloned().unwrap_or_else(Q::zero)).collect())
}

fn valid_at(family: Family, p: u64) -> Result<IgusaClosedForm> {
    check_prime(p)?;
    let cf = closed_form(family)?;
    if !cf.validity.holds(p) {
        return Err(Error::Domain(format!("family {family} is not valid at p = {p} ({})", cf.validity)));
    }
    Ok(cf)
}

/// Compares `(1 - T Z_f)/(1 - T)` at `X = p` with point counts of `form`.
pub fn verify_closed_form(form: &QuadraticForm, family: Family, p: u64, levels: u32) -> Result<IgusaReport> {
    let cf = valid_at(family, p)?;
    let z = cf.at_prime(p)?;
    let t = RationalFunction::var(Var::T);
    let w = RationalFunction::one().sub(&t.mul(&z)).div_poly(&Polynomial::one_minus(Monomial::var(Var::T, 1)))?;
    let predicted = t_series(&w, levels)?;
    let counted = poincare_partial(form, p, levels)?;
    Ok(report(family, p, predicted, counted))
}

/// Primitive variant: `(1 - p^{-3} T - T Z*)/(1 - T)` with
/// `Z* = (1 - p^{-3} T^2) Z_f` against `N*_m p^{-3m}`.
pub fn verify_primitive(form: &QuadraticForm, family: Family, p: u64, levels: u32) -> Result<IgusaReport> {
    let cf = valid_at(family, p)?;
    let z = cf.at_prime(p)?;
    let p3 = Q::new(1.into(), (p as i64).pow(3).into());
    let mut lhs = Polynomial::one();
    lhs.add_term(Monomial::var(Var::T, 1), -p3.clone());
    let mut zfac = Polynomial::one();
    zfac.add_term(Monomial::var(Var::T, 2), -p3);
    let zstar = z.mul_poly(&zfac);
    let w = RationalFunction::from_poly(lhs)
        .sub(&zstar.mul_monomial(&Monomial::var(Var::T, 1)))
        .div_poly(&Polynomial::one_minus(Monomial::var(Var::T, 1)))?;
    let predicted = t_series(&w, levels)?;
    let counted = primitive_poincare_partial(form, p, levels)?;
    Ok(report(family, p, predicted, counted))
}

fn report(family: Family, p: u64, predicted: Vec<Q>, counted: Vec<Q>) -> IgusaReport {
    let levels = predicted
        .into_iter()
        .zip(counted)
        .enumerate()
        .map(|(m, (predicted, counted))| LevelCheck { level: m as u32, predicted, counted })
        .collect();
    IgusaReport { family, p, levels }
}

impl fmt::Display for IgusaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {} at p = {}", self.family, self.p)?;
        for l in &self.levels {
            let status = if l.matches() { "match" } else { "MISMATCH" };
            writeln!(f, "level {}: closed form {} count {} {status}", l.level, l.predicted, l.counted)?;
        }
        Ok(())
    }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::cyclo;
use super::monomial::{Monomial, Var, NVARS};
use super::poly::{Polynomial, Q};
use crate::error::{Error, Result};

/// Exact rational function with a factored denominator.
///
/// The denominator is a multiset of normalized factors: each has no
/// monomial content, coprime integer coefficients and a positive first
/// coefficient in canonical order (for the factors used here that is the
/// constant term). Constants and monomials are always folded into the
/// numerator, which may therefore carry negative exponents.
///
/// Equality is semantic and decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: BTreeMap<Polynomial, u32>,
}

/// `f = c * m * h` with `h` normalized. `h` is `1` when `f` is a single term.
pub(crate) fn normalize_factor(f: &Polynomial) -> (Q, Monomial, Polynomial) {
    let m = f.monomial_content();
    let g = f.shift(&m.inv());
    let mut c = g.content();
    let mut h = g.scale(&c.recip());
    if h.first_term().map_or(false, |(_, a)| a.is_negative()) {
        h = -h;
        c = -c;
    }
    (c, m, h)
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(Polynomial::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(Polynomial::monomial(m))
    }

    /// `num / prod f_i^{k_i}`.
    pub fn from_parts<I>(num: Polynomial, den: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Polynomial, u32)>,
    {
        let mut r = Self::from_poly(num);
        for (f, k) in den {
            r.divide_by_factor(&f, k)?;
        }
        Ok(r)
    }

    /// `num / den` for a single polynomial denominator.
    pub fn ratio(num: Polynomial, den: Polynomial) -> Result<Self> {
        Self::from_parts(num, [(den, 1)])
    }

    /// `1 / (1 - m)`.
    pub fn geometric(m: Monomial) -> Self {
        Self::from_parts(Polynomial::one(), [(Polynomial::one_minus(m), 1)])
            .expect("1 - m is never zero for a non-trivial monomial")
    }

    fn divide_by_factor(&mut self, f: &Polynomial, k: u32) -> Result<()> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if k == 0 {
            return Ok(());
        }
        let (c, m, h) = normalize_factor(f);
        let unit = m.pow(-(k as i32));
        let cinv = num_traits::pow(c.recip(), k as usize);
        self.num = self.num.mul_term(&unit, &cinv);
        if self.num.is_zero() {
            self.den.clear();
            return Ok(());
        }
        if !h.is_one() {
            *self.den.entry(h).or_insert(0) += k;
        }
        Ok(())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// The normalized denominator factors with multiplicities.
    pub fn den_factors(&self) -> impl Iterator<Item = (&Polynomial, u32)> {
        self.den.iter().map(|(f, k)| (f, *k))
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> Polynomial {
        self.den
            .iter()
            .fold(Polynomial::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.keys().any(|f| f.involves(v))
    }

    pub fn variables(&self) -> Vec<Var> {
        (0..NVARS)
            .map(Var::from_index)
            .filter(|&v| self.involves(v))
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        RationalFunction { num: self.num.shift(m), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let num = &self.num * p;
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den: self.den.clone() }
    }

    pub fn div_poly(&self, p: &Polynomial) -> Result<Self> {
        let mut r = self.clone();
        r.divide_by_factor(p, 1)?;
        Ok(r)
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut lcm = self.den.clone();
        for (f, &k) in &o.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let cofactor = |den: &BTreeMap<Polynomial, u32>| {
            lcm.iter().fold(Polynomial::one(), |acc, (f, &k)| {
                let have = den.get(f).copied().unwrap_or(0);
                if k > have {
                    &acc * &f.pow(k - have)
                } else {
                    acc
                }
            })
        };
        let num = &(&self.num * &cofactor(&self.den)) + &(&o.num * &cofactor(&o.den));
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den: lcm }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let num = &self.num * &o.num;
        if num.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RationalFunction { num, den }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.denominator();
        Self::from_parts(num, [(self.num.clone(), 1)])
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.recip()?.pow(-k);
        }
        let num = self.num.pow(k as u32);
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let den = self.den.iter().map(|(f, &e)| (f.clone(), e * k as u32)).collect();
        Ok(RationalFunction { num, den })
    }

    /// Semantic equality by cross-multiplication after removing common
    /// denominator factors.
    pub fn equals(&self, o: &Self) -> bool {
        let mut a = Polynomial::one();
        let mut b = Polynomial::one();
        for (f, &k) in &self.den {
            let j = o.den.get(f).copied().unwrap_or(0);
            if k > j {
                b = &b * &f.pow(k - j);
            }
        }
        for (f, &k) in &o.den {
            let j = self.den.get(f).copied().unwrap_or(0);
            if k > j {
                a = &a * &f.pow(k - j);
            }
        }
        &self.num * &a == &o.num * &b
    }

    /// Replace every listed variable `v` by `v^{-1}`.
    pub fn invert_variables(&self, vars: &[Var]) -> Self {
        Self::from_parts(
            self.num.invert(vars),
            self.den.iter().map(|(f, &k)| (f.invert(vars), k)),
        )
        .expect("inversion keeps factors non-zero")
    }

    /// Substitute rational constants.
    pub fn substitute_values(&self, vals: &[(Var, Q)]) -> Result<Self> {
        let pole = |p: &Polynomial| Error::DenominatorVanishes { binding: describe(p, vals) };
        let mut r = Self::from_poly(self.num.eval_partial(vals).ok_or_else(|| pole(&self.num))?);
        for (f, &k) in &self.den {
            let g = f.eval_partial(vals).ok_or_else(|| pole(f))?;
            if g.is_zero() {
                return Err(Error::DenominatorVanishes { binding: describe(f, vals) });
            }
            r.divide_by_factor(&g, k)?;
        }
        Ok(r)
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &[(Var, RationalFunction)]) -> Result<Self> {
        if bindings.iter().all(|(_, b)| b.as_constant().is_some()) {
            let vals: Vec<(Var, Q)> = bindings
                .iter()
                .map(|(v, b)| (*v, b.as_constant().unwrap()))
                .collect();
            return self.substitute_values(&vals);
        }
        let mut cache: HashMap<(usize, i32), RationalFunction> = HashMap::new();
        let mut r = subst_poly(&self.num, bindings, &mut cache)?;
        for (f, &k) in &self.den {
            let g = subst_poly(f, bindings, &mut cache)?;
            if g.is_zero() {
                return Err(Error::DenominatorVanishes { binding: describe_rf(f, bindings) });
            }
            r = r.div(&g.pow(k as i32)?)?;
        }
        Ok(r)
    }

    /// Splits binomial-type denominator factors into cyclotomic pieces and
    /// cancels every piece that divides the numerator.
    pub fn reduce(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut den: BTreeMap<Polynomial, u32> = BTreeMap::new();
        for (f, &k) in &self.den {
            for (piece, e) in split_factor(f, &mut num, k) {
                *den.entry(piece).or_insert(0) += e;
            }
        }
        let mut out = BTreeMap::new();
        for (f, k) in den {
            let mut left = k;
            while left > 0 {
                match num.div_exact(&f) {
                    Some(qt) => {
                        num = qt;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                out.insert(f, left);
            }
        }
        RationalFunction { num, den: out }
    }

    /// Cancels the full gcd when numerator and denominator are univariate.
    pub fn reduce_univariate(&self) -> Result<Self> {
        let vars = self.variables();
        if vars.len() > 1 {
            return Err(Error::Shape("reduce_univariate needs a single variable".into()));
        }
        let Some(&v) = vars.first() else {
            return Ok(self.clone());
        };
        let to_vec = |p: &Polynomial| -> (i32, Vec<Q>) {
            let lo = p.min_exp(v).unwrap_or(0);
            let hi = p.max_exp(v).unwrap_or(0);
            let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
            for (m, a) in p.terms() {
                c[(m.exp(v) - lo) as usize] = a.clone();
            }
            (lo, c)
        };
        let (nlo, n) = to_vec(&self.num);
        let (dlo, d) = to_vec(&self.denominator());
        let g = upoly_gcd(&n, &d);
        let n2 = upoly_div(&n, &g);
        let d2 = upoly_div(&d, &g);
        let from_vec = |lo: i32, c: &[Q]| {
            Polynomial::from_terms(
                c.iter()
                    .enumerate()
                    .map(|(i, a)| (Monomial::var(v, lo + i as i32), a.clone())),
            )
        };
        Self::ratio(from_vec(nlo, &n2), from_vec(dlo, &d2))
    }

    pub fn eval_f64(&self, vals: &[f64; NVARS]) -> f64 {
        let mut r = self.num.eval_f64(vals);
        for (f, &k) in &self.den {
            r /= f.eval_f64(vals).powi(k as i32);
        }
        r
    }
}

/// Splits one normalized factor `f^k` into cyclotomic pieces; any constant
/// left over is folded into `num`.
fn split_factor(f: &Polynomial, num: &mut Polynomial, k: u32) -> Vec<(Polynomial, u32)> {
    let Some((m, coeffs)) = cyclo::as_univariate(f) else {
        return vec![(f.clone(), k)];
    };
    let (parts, rest) = cyclo::cyclotomic_split(&coeffs);
    if parts.is_empty() {
        return vec![(f.clone(), k)];
    }
    let mut pieces = Vec::new();
    let mut prod = Polynomial::one();
    for (d, e) in parts {
        let (_, _, h) = normalize_factor(&cyclo::from_univariate(&m, &cyclo::cyclotomic(d)));
        prod = &prod * &h.pow(e);
        pieces.push((h, e * k));
    }
    let restp = cyclo::from_univariate(&m, &rest);
    if restp.as_constant().is_none() {
        let (_, _, h) = normalize_factor(&restp);
        prod = &prod * &h;
        pieces.push((h, k));
    }
    // f = u * prod for a rational constant u; the denominator gains prod^k
    let fc = f.first_term().unwrap().1.clone();
    let pc = prod.first_term().unwrap().1.clone();
    let u = fc / pc;
    *num = num.scale(&num_traits::pow(u.recip(), k as usize));
    pieces
}

fn subst_poly(
    p: &Polynomial,
    bindings: &[(Var, RationalFunction)],
    cache: &mut HashMap<(usize, i32), RationalFunction>,
) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    // group terms by their bound part so that each power is computed once
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut t = RationalFunction::one();
        for (bi, (v, b)) in bindings.iter().enumerate() {
            let e = rest.exp(*v);
            if e == 0 {
                continue;
            }
            rest.0[v.index()] = 0;
            let key = (bi, e);
            if !cache.contains_key(&key) {
                let val = b.pow(e).map_err(|_| Error::DenominatorVanishes {
                    binding: format!("{v} := {b} (raised to {e})"),
                })?;
                cache.insert(key, val);
            }
            t = t.mul(&cache[&key]);
        }
        acc = acc.add(&t.mul(&RationalFunction::from_poly(Polynomial::term(rest, c.clone()))));
    }
    Ok(acc)
}

fn describe(f: &Polynomial, vals: &[(Var, Q)]) -> String {
    let b: Vec<String> = vals
        .iter()
        .filter(|(v, _)| f.involves(*v))
        .map(|(v, x)| format!("{v} := {x}"))
        .collect();
    format!("{} in factor ({f})", b.join(", "))
}

fn describe_rf(f: &Polynomial, bindings: &[(Var, RationalFunction)]) -> String {
    let b: Vec<String> = bindings
        .iter()
        .filter(|(v, _)| f.involves(*v))
        .map(|(v, x)| format!("{v} := {x}"))
        .collect();
    format!("{} in factor ({f})", b.join(", "))
}

fn upoly_trim(a: &mut Vec<Q>) {
    while a.len() > 1 && a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
}

fn upoly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let lead = r.last().unwrap() / &b[db];
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lead * bj;
        }
        r.pop();
        if r.is_empty() {
            r.push(Q::zero());
        }
        upoly_trim(&mut r);
    }
    r
}

fn upoly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    upoly_trim(&mut x);
    upoly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = upoly_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().unwrap().clone();
    x.iter().map(|c| c / &lead).collect()
}

fn upoly_div(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return vec![Q::zero()];
    }
    let mut quot = vec![Q::zero(); r.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &r[i + db] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    quot
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::add(self, o)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::sub(self, o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::mul(self, o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        // lower-degree factors first, ties broken with X before Y1 before ..
        let mut facs: Vec<(&Polynomial, u32)> = self.den.iter().map(|(p, &k)| (p, k)).collect();
        facs.sort_by(|(a, _), (b, _)| {
            let la = a.leading_term().unwrap().0;
            let lb = b.leading_term().unwrap().0;
            la.degree()
                .cmp(&lb.degree())
                .then_with(|| lb.0.cmp(&la.0))
                .then_with(|| a.cmp(b))
        });
        let parts: Vec<String> = facs
            .iter()
            .map(|(p, k)| if *k == 1 { format!("({p})") } else { format!("({p})^{k}") })
            .collect();
        if parts.len() == 1 && self.den.values().all(|&k| k == 1) {
            write!(f, " / {}", parts[0])
        } else {
            write!(f, " / ({})", parts.join("*"))
        }
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var, NVARS};

/// Exact rational number, the coefficient type everywhere.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration follows the graded-lex
/// order of [`Monomial`] and printing is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q(n))
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Q::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1))
    }

    /// `1 - m`, the basic binomial of every zeta factor.
    pub fn one_minus(m: Monomial) -> Self {
        let mut p = Self::one();
        p.add_term(m, -Q::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// The constant value if the polynomial has no non-trivial monomial.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Single term `c*m`, if that is what this is.
    pub fn as_term(&self) -> Option<(Monomial, Q)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((*m, c.clone()))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    /// First term in canonical (ascending) order.
    pub fn first_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next()
    }

    /// Largest term in canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn shift(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn content(&self) -> Q {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Q::one();
        }
        Q::new(num_gcd, den_lcm)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    /// Variables occurring with a non-zero exponent.
    pub fn variables(&self) -> Vec<Var> {
        (0..NVARS)
            .map(Var::from_index)
            .filter(|&v| self.involves(v))
            .collect()
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Replace `v` by `v^{-1}` for every listed variable.
    pub fn invert(&self, vars: &[Var]) -> Polynomial {
        self.map_monomials(|m| {
            let mut r = *m;
            for v in vars {
                r.0[v.index()] = -r.0[v.index()];
            }
            r
        })
    }

    /// Substitute rational constants for some variables; `None` when a zero
    /// value meets a negative exponent.
    pub fn eval_partial(&self, vals: &[(Var, Q)]) -> Option<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            let mut coef = c.clone();
            for (v, x) in vals {
                let e = m2.0[v.index()];
                if e != 0 {
                    if e < 0 && x.is_zero() {
                        return None;
                    }
                    m2.0[v.index()] = 0;
                    coef *= pow_q(x, e);
                }
            }
            out.add_term(m2, coef);
        }
        Some(out)
    }

    /// Floating-point evaluation; `vals` is indexed by variable slot.
    pub fn eval_f64(&self, vals: &[f64; NVARS]) -> f64 {
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = q_to_f64(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    t *= vals[i].powi(e);
                }
            }
            s += t;
        }
        s
    }

    /// Exact quotient `self / other`, or `None` if `other` does not divide.
    ///
    /// Works in the Laurent ring: both sides are first stripped of their
    /// monomial content, then ordinary division with respect to graded-lex
    /// order is run.
    pub fn div_exact(&self, other: &Polynomial) -> Option<Polynomial> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let ma = self.monomial_content();
        let mb = other.monomial_content();
        let a = self.shift(&ma.inv());
        let b = other.shift(&mb.inv());
        let (lb_m, lb_c) = {
            let (m, c) = b.leading_term().unwrap();
            (*m, c.clone())
        };
        let mut r = a;
        let mut quot = Polynomial::zero();
        while let Some((lm, lc)) = r.leading_term().map(|(m, c)| (*m, c.clone())) {
            if !lm.divisible_by(&lb_m) {
                return None;
            }
            let tm = lm.div(&lb_m);
            let tc = &lc / &lb_c;
            r = &r - &b.mul_term(&tm, &tc);
            quot.add_term(tm, tc);
        }
        Some(quot.shift(&ma.div(&mb)))
    }

    /// Homogeneous component of the given total degree in `vars`.
    pub fn homogeneous_part(&self, vars: &[Var], deg: i64) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| vars.iter().map(|v| m.exp(*v) as i64).sum::<i64>() == deg)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Product truncated to total degree `<= bound` in `vars`.
    pub fn mul_truncated(&self, other: &Polynomial, vars: &[Var], bound: i64) -> Polynomial {
        let deg = |m: &Monomial| vars.iter().map(|v| m.exp(*v) as i64).sum::<i64>();
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            let da = deg(ma);
            if da > bound {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + deg(mb) <= bound {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    pub fn truncate(&self, vars: &[Var], bound: i64) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| vars.iter().map(|v| m.exp(*v) as i64).sum::<i64>() <= bound)
                .map(|(m, c)| (*m, c.clone())),
        )
    }
}

pub fn pow_q(x: &Q, e: i32) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn q_to_f64(c: &Q) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: go through logarithms of bit lengths.
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        let mut r = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, o: Polynomial) -> Polynomial {
        &self + &o
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, o: Polynomial) -> Polynomial {
        &self - &o
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, o: Polynomial) -> Polynomial {
        &self * &o
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn fmt_coeff(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", fmt_coeff(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&a))?;
            }
        }
        Ok(())
    }
}

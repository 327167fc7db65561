use std::collections::BTreeMap;

use num_traits::Zero;

use super::monomial::{Monomial, Var};
use super::poly::{q, Polynomial, Q};
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Coefficients keyed by exponent tuples over an ordered list of variables.
pub type Coefficients = BTreeMap<Vec<u32>, Q>;

/// Power-series inverse of `f` up to total degree `bound` in `vars`.
fn inverse_series(f: &Polynomial, vars: &[Var], bound: i64) -> Result<Polynomial> {
    let f0 = f.coeff(&Monomial::one());
    if f0.is_zero() {
        return Err(Error::NotExpandable(format!("factor ({f}) has zero constant term")));
    }
    let inv0 = f0.recip();
    let parts: Vec<Polynomial> = (0..=bound).map(|k| f.homogeneous_part(vars, k)).collect();
    let mut g: Vec<Polynomial> = vec![Polynomial::constant(inv0.clone())];
    for k in 1..=bound as usize {
        let mut s = Polynomial::zero();
        for j in 1..=k {
            if !parts[j].is_zero() && !g[k - j].is_zero() {
                s = &s + &(&parts[j] * &g[k - j]);
            }
        }
        g.push(s.scale(&-inv0.clone()));
    }
    Ok(g.iter().fold(Polynomial::zero(), |acc, p| &acc + p))
}

/// Expands `w` as a power series in `vars` after binding the constants in
/// `vals`. Every other variable must be absent.
pub fn expand(w: &RationalFunction, vals: &[(Var, Q)], vars: &[Var], bound: u32) -> Result<Coefficients> {
    let w = w.substitute_values(vals)?;
    for v in w.variables() {
        if !vars.contains(&v) {
            return Err(Error::VariableMismatch(format!("variable {v} is neither bound nor a series variable")));
        }
    }
    let b = bound as i64;
    let check = |p: &Polynomial, what: &str| -> Result<()> {
        if p.terms().any(|(m, _)| m.has_negative()) {
            return Err(Error::NotExpandable(format!("{what} ({p}) has negative exponents")));
        }
        Ok(())
    };
    check(w.numerator(), "numerator")?;
    let mut acc = w.numerator().truncate(vars, b);
    for (f, k) in w.den_factors() {
        check(f, "denominator factor")?;
        let inv = inverse_series(f, vars, b)?;
        for _ in 0..k {
            acc = acc.mul_truncated(&inv, vars, b);
        }
    }
    let mut out = Coefficients::new();
    let mut key = vec![0u32; vars.len()];
    fill(&mut out, &mut key, 0, bound);
    for (m, c) in acc.terms() {
        let k: Vec<u32> = vars.iter().map(|v| m.exp(*v) as u32).collect();
        out.insert(k, c.clone());
    }
    Ok(out)
}

fn fill(out: &mut Coefficients, key: &mut Vec<u32>, i: usize, left: u32) {
    if i == key.len() {
        out.insert(key.clone(), Q::zero());
        return;
    }
    for e in 0..=left {
        key[i] = e;
        fill(out, key, i + 1, left - e);
    }
    key[i] = 0;
}

/// Coefficients of `Y1^c1 .. Yd^cd` in `w` at `X := p`, for every tuple of
/// total degree at most `bound`.
pub fn series_coefficients(w: &RationalFunction, p: u64, bound: u32, d: usize) -> Result<Coefficients> {
    expand(w, &[(Var::X, q(p as i64))], &Var::ys(d), bound)
}

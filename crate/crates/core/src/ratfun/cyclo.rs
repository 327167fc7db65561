//! Cyclotomic splitting of binomial-like factors `g(M)` in a single monomial.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::{Monomial, NVARS};
use super::poly::{Polynomial, Q};

/// Coefficients (ascending) of the n-th cyclotomic polynomial.
pub fn cyclotomic(n: u32) -> Vec<BigInt> {
    thread_local! {
        static CACHE: std::cell::RefCell<HashMap<u32, Vec<BigInt>>> = Default::default();
    }
    if let Some(v) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return v;
    }
    // u^n - 1 divided by all proper divisor cyclotomics
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic recursion");
        }
    }
    CACHE.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

pub fn euler_phi(mut n: u32) -> u32 {
    let mut r = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

pub fn mobius(mut n: u32) -> i32 {
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division by a monic-up-to-sign divisor with unit leading coefficient.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() < b.len() {
        return if r.iter().all(|c| c.is_zero()) { Some(vec![BigInt::zero()]) } else { None };
    }
    let dq = r.len() - b.len();
    let mut quot = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = &r[i + db];
        let (qc, rem) = c.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &qc * bj;
        }
        quot[i] = qc;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

/// Reads `f` as `g(M)` for a primitive monomial `M` with `g(0) != 0`.
pub fn as_univariate(f: &Polynomial) -> Option<(Monomial, Vec<Q>)> {
    let one = Monomial::one();
    if f.coeff(&one).is_zero() || f.len() < 2 {
        return None;
    }
    let m1 = f.terms().find(|(m, _)| !m.is_one()).map(|(m, _)| *m)?;
    let g = m1.0.iter().fold(0i32, |acc, &e| acc.gcd(&e));
    let mut dir = m1;
    for e in dir.0.iter_mut() {
        *e /= g;
    }
    let pivot = (0..NVARS).find(|&i| dir.0[i] != 0)?;
    let mut coeffs: Vec<Q> = Vec::new();
    for (m, c) in f.terms() {
        let k = m.0[pivot] / dir.0[pivot];
        if k < 0 || dir.pow(k) != *m {
            return None;
        }
        let k = k as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Q::zero());
        }
        coeffs[k] = c.clone();
    }
    Some((dir, coeffs))
}

/// `g(M)` as a polynomial.
pub fn from_univariate(m: &Monomial, coeffs: &[BigInt]) -> Polynomial {
    Polynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (m.pow(k as i32), Q::from_integer(c.clone()))),
    )
}

/// Splits an integer-coefficient `g(M)` into cyclotomic factors `Phi_d(M)`.
///
/// Returns `(d, multiplicity)` pairs and the cofactor (possibly constant).
pub fn cyclotomic_split(coeffs: &[Q]) -> (Vec<(u32, u32)>, Vec<BigInt>) {
    let mut g: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    trim(&mut g);
    let mut found = Vec::new();
    let deg = g.len() as u32 - 1;
    if deg == 0 {
        return (found, g);
    }
    let dmax = (2 * deg * deg).max(6);
    for d in 1..=dmax {
        let cur = g.len() as u32 - 1;
        if cur == 0 {
            break;
        }
        if euler_phi(d) > cur {
            continue;
        }
        let phi = cyclotomic(d);
        let mut k = 0;
        while g.len() > 1 {
            match div_exact(&g, &phi) {
                Some(qt) => {
                    g = qt;
                    trim(&mut g);
                    k += 1;
                }
                None => break,
            }
        }
        if k > 0 {
            found.push((d, k));
        }
    }
    (found, g)
}

/// Exponents of the binomials `(1 - M^e)` whose product is
/// `prod Phi_d(M)^{k_d}` (Moebius inversion of `1 - u^n = -prod_{d|n} Phi_d`).
pub fn cyclotomics_to_binomials(parts: &[(u32, u32)]) -> Vec<(u32, i64)> {
    let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
    for &(d, k) in parts {
        for e in 1..=d {
            if d % e == 0 {
                let mu = mobius(d / e) as i64;
                if mu != 0 {
                    *acc.entry(e).or_insert(0) += mu * k as i64;
                }
            }
        }
    }
    acc.into_iter().filter(|(_, k)| *k != 0).collect()
}

//! Primes, characters and prime-class predicates.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Kronecker symbol `(d/p)` for a prime `p`.
pub fn kronecker(d: i64, p: u64) -> i8 {
    if p == 2 {
        if d % 2 == 0 {
            return 0;
        }
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let a = d.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(d/n)` for any positive `n`; completely multiplicative in `n`.
pub fn kronecker_symbol(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let tz = n.trailing_zeros();
    let mut n = n >> tz;
    let mut sign: i8 = 1;
    if tz > 0 {
        let k2 = kronecker(d, 2);
        if k2 == 0 {
            return 0;
        }
        if tz % 2 == 1 {
            sign = k2;
        }
    }
    // Jacobi symbol for odd n
    let mut a = d.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| kronecker(a as i64, p) == -1).expect("odd prime has a non-residue")
}

/// `p`-adic valuation of a non-zero integer.
pub fn valuation(n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The set of primes a formula is valid for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeValidity {
    All,
    Odd,
    /// `p = residue mod modulus`.
    Residue { modulus: u64, residue: u64 },
    Fixed(u64),
    /// `p` does not divide `n`.
    Coprime(u64),
}

impl PrimeValidity {
    pub fn holds(&self, p: u64) -> bool {
        match *self {
            PrimeValidity::All => true,
            PrimeValidity::Odd => p != 2,
            PrimeValidity::Residue { modulus, residue } => p % modulus == residue,
            PrimeValidity::Fixed(q) => p == q,
            PrimeValidity::Coprime(n) => n % p != 0,
        }
    }

    pub fn fixed_prime(&self) -> Option<u64> {
        match *self {
            PrimeValidity::Fixed(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for PrimeValidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeValidity::All => write!(f, "all"),
            PrimeValidity::Odd => write!(f, "odd"),
            PrimeValidity::Residue { modulus, residue } => write!(f, "{residue}mod{modulus}"),
            PrimeValidity::Fixed(p) => write!(f, "p={p}"),
            PrimeValidity::Coprime(n) => write!(f, "coprime{n}"),
        }
    }
}

impl FromStr for PrimeValidity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown prime class {s:?}"));
        let s = s.trim();
        Ok(match s {
            "all" => PrimeValidity::All,
            "odd" => PrimeValidity::Odd,
            _ => {
                if let Some(p) = s.strip_prefix("p=") {
                    PrimeValidity::Fixed(p.parse().map_err(|_| bad())?)
                } else if let Some(n) = s.strip_prefix("coprime") {
                    PrimeValidity::Coprime(n.parse().map_err(|_| bad())?)
                } else if let Some((r, m)) = s.split_once("mod") {
                    PrimeValidity::Residue {
                        modulus: m.parse().map_err(|_| bad())?,
                        residue: r.parse().map_err(|_| bad())?,
                    }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

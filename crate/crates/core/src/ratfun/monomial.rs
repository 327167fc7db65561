use std::cmp::Ordering;
use std::fmt;

/// Largest ambient dimension for the `Y` variables.
pub const MAX_DIM: usize = 5;
/// Slots in a monomial: X, Y1..Y5, T and the character symbol C.
pub const NVARS: usize = MAX_DIM + 3;

/// A variable of the fixed alphabet.
///
/// `X` stands for the prime, `Y1..Y5` for `p^{-s_i}`, `T` for `p^{-s}` and
/// `C` for a quadratic character value `chi(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y(u8),
    T,
    C,
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y(i) => {
                assert!((1..=MAX_DIM as u8).contains(&i), "Y index out of range");
                i as usize
            }
            Var::T => MAX_DIM + 1,
            Var::C => MAX_DIM + 2,
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::X,
            i if i <= MAX_DIM => Var::Y(i as u8),
            i if i == MAX_DIM + 1 => Var::T,
            i if i == MAX_DIM + 2 => Var::C,
            _ => panic!("variable index {i} out of range"),
        }
    }

    /// `Y1..Yd` as a vector.
    pub fn ys(d: usize) -> Vec<Var> {
        (1..=d as u8).map(Var::Y).collect()
    }

    pub fn parse(name: &str) -> Option<Var> {
        match name {
            "X" => Some(Var::X),
            "T" => Some(Var::T),
            "C" => Some(Var::C),
            _ => {
                let rest = name.strip_prefix('Y')?;
                let i: u8 = rest.parse().ok()?;
                (1..=MAX_DIM as u8).contains(&i).then_some(Var::Y(i))
            }
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "X"),
            Var::Y(i) => write!(f, "Y{i}"),
            Var::T => write!(f, "T"),
            Var::C => write!(f, "C"),
        }
    }
}

/// A Laurent monomial; zero exponents are simply absent variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        r
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a -= b;
        }
        r
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a *= k;
        }
        r
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Componentwise `self >= o`.
    pub fn divisible_by(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn meet(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Var::from_index(i), e))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents in the order
    /// X, Y1, .., T, C.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

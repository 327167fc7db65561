//! Rank-3 Lie rings: structure constants, the structure matrix, its
//! quadratic form and the rank/discriminant classification.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::{self, IMat3, Mat3};
use crate::ratfun::{q, Q};

pub type Triple = [i64; 3];

/// Lie ring on `Z^3` given by `[e_i, e_j] = sum_k c(i,j)_k e_k` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    c12: Triple,
    c13: Triple,
    c23: Triple,
    name: Option<String>,
}

/// The rank-3 algebras with published local formulas.
pub const CATALOG: [&str; 5] = ["Z3", "H", "sl2", "L1", "L2"];

fn add3(a: Triple, b: Triple) -> Triple {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

impl LieAlgebra {
    /// Validates the Jacobi identity over `Z`.
    pub fn new(c12: Triple, c13: Triple, c23: Triple) -> Result<Self> {
        let l = LieAlgebra { c12, c13, c23, name: None };
        let e = |i: usize| {
            let mut v = [0; 3];
            v[i] = 1;
            v
        };
        let (a, b, c) = (e(0), e(1), e(2));
        let j = add3(
            add3(l.bracket(&l.bracket(&a, &b), &c), l.bracket(&l.bracket(&b, &c), &a)),
            l.bracket(&l.bracket(&c, &a), &b),
        );
        if j != [0, 0, 0] {
            return Err(Error::Jacobi { i: 1, j: 2, k: 3 });
        }
        Ok(l)
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn abelian() -> Self {
        Self::new([0; 3], [0; 3], [0; 3]).unwrap().named("Z3")
    }

    /// Built-in algebras by label (`Z3`, `H`, `sl2`, `L1`, `L2`).
    pub fn catalog(label: &str) -> Result<Self> {
        let (c12, c13, c23) = match label {
            "Z3" | "abelian" => ([0, 0, 0], [0, 0, 0], [0, 0, 0]),
            "H" => ([0, 0, 1], [0, 0, 0], [0, 0, 0]),
            "sl2" => ([0, 0, 1], [-2, 0, 0], [0, 2, 0]),
            "L1" => ([0, 0, 1], [0, 1, 0], [0, 0, 0]),
            "L2" => ([0, 0, 1], [0, -1, 0], [0, 0, 0]),
            _ => return Err(Error::UnknownAlgebra(label.to_string())),
        };
        let canonical = if label == "abelian" { "Z3" } else { label };
        Ok(Self::new(c12, c13, c23)?.named(canonical))
    }

    /// The catalog label whose brackets coincide exactly with this algebra.
    pub fn catalog_label(&self) -> Option<&'static str> {
        CATALOG.iter().copied().find(|l| {
            let c = Self::catalog(l).unwrap();
            c.c12 == self.c12 && c.c13 == self.c13 && c.c23 == self.c23
        })
    }

    pub fn brackets(&self) -> (Triple, Triple, Triple) {
        (self.c12, self.c13, self.c23)
    }

    /// `[e_i, e_j]` for 0-based indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Triple {
        let neg = |t: Triple| [-t[0], -t[1], -t[2]];
        match (i, j) {
            (0, 1) => self.c12,
            (0, 2) => self.c13,
            (1, 2) => self.c23,
            (1, 0) => neg(self.c12),
            (2, 0) => neg(self.c13),
            (2, 1) => neg(self.c23),
            _ => [0; 3],
        }
    }

    /// Bilinear bracket of integer coordinate vectors.
    pub fn bracket(&self, u: &Triple, v: &Triple) -> Triple {
        let mut out = [0i64; 3];
        for i in 0..3 {
            for j in 0..3 {
                let s = u[i] * v[j];
                if s != 0 && i != j {
                    let c = self.basis_bracket(i, j);
                    for k in 0..3 {
                        out[k] += s * c[k];
                    }
                }
            }
        }
        out
    }

    /// Same as [`bracket`](Self::bracket) in `i128` for enumeration work.
    pub fn bracket_wide(&self, u: &[i128; 3], v: &[i128; 3]) -> [i128; 3] {
        let mut out = [0i128; 3];
        for i in 0..3 {
            for j in 0..3 {
                let s = u[i] * v[j];
                if s != 0 && i != j {
                    let c = self.basis_bracket(i, j);
                    for k in 0..3 {
                        out[k] += s * c[k] as i128;
                    }
                }
            }
        }
        out
    }

    /// Rows `c(2,3)`, `-c(1,3)`, `c(1,2)`.
    pub fn structure_matrix(&self) -> IMat3 {
        let c13 = self.c13;
        [self.c23, [-c13[0], -c13[1], -c13[2]], self.c12]
    }

    pub fn quadratic_form(&self) -> QuadraticForm {
        QuadraticForm::new(self.structure_matrix())
    }

    /// `det(P) (P^t)^{-1} A P^{-1}`: the structure matrix after base change.
    pub fn transform(&self, p: &Mat3) -> Result<Mat3> {
        let d = mat::det(p);
        let pinv = mat::inverse(p)?;
        let a = mat::from_int(&self.structure_matrix());
        let r = mat::mul(&mat::mul(&mat::transpose(&pinv), &a), &pinv);
        Ok(mat::scale(&r, &d))
    }

    /// Structure constants in the basis `f_i = sum_j P_ij e_j`, as rows
    /// `c'(1,2)`, `c'(1,3)`, `c'(2,3)`.
    pub fn constants_in_basis(&self, p: &Mat3) -> Result<[[Q; 3]; 3]> {
        let pinv = mat::inverse(p)?;
        let br = |i: usize, j: usize| -> [Q; 3] {
            let mut v: [Q; 3] = std::array::from_fn(|_| Q::zero());
            for k in 0..3 {
                for l in 0..3 {
                    let s = &p[i][k] * &p[j][l];
                    if s.is_zero() || k == l {
                        continue;
                    }
                    let c = self.basis_bracket(k, l);
                    for m in 0..3 {
                        v[m] += &s * q(c[m]);
                    }
                }
            }
            // coordinates w with v = w P
            std::array::from_fn(|c| (0..3).fold(Q::zero(), |acc, r| acc + &v[r] * &pinv[r][c]))
        };
        Ok([br(0, 1), br(0, 2), br(1, 2)])
    }

    /// The ring `p^i L`: every structure constant multiplied by `p^i`.
    pub fn scaled(&self, factor: i64) -> LieAlgebra {
        let s = |t: Triple| [t[0] * factor, t[1] * factor, t[2] * factor];
        LieAlgebra { c12: s(self.c12), c13: s(self.c13), c23: s(self.c23), name: self.name.clone() }
    }

    /// Reads the `[i,j] = c1 c2 c3` definition format.
    pub fn parse_definition(text: &str) -> Result<Self> {
        let mut slots: [Option<Triple>; 3] = [None, None, None];
        let mut name = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::InvalidInput(format!("line {}: {m}", n + 1));
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad("expected '='"))?;
            let lhs = lhs.trim();
            if lhs == "name" {
                name = Some(rhs.trim().to_string());
                continue;
            }
            let inner = lhs
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| bad("expected [i,j]"))?;
            let (i, j) = inner.split_once(',').ok_or_else(|| bad("expected [i,j]"))?;
            let i: usize = i.trim().parse().map_err(|_| bad("bad index"))?;
            let j: usize = j.trim().parse().map_err(|_| bad("bad index"))?;
            let slot = match (i, j) {
                (1, 2) => 0,
                (1, 3) => 1,
                (2, 3) => 2,
                _ => return Err(bad("indices must satisfy 1 <= i < j <= 3")),
            };
            let cs: Vec<i64> = rhs
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("coefficients must be integers"))?;
            if cs.len() != 3 {
                return Err(bad("expected three coefficients"));
            }
            if slots[slot].is_some() {
                return Err(bad("duplicate bracket"));
            }
            slots[slot] = Some([cs[0], cs[1], cs[2]]);
        }
        let get = |i: usize| slots[i].unwrap_or([0; 3]);
        let l = Self::new(get(0), get(1), get(2))?;
        Ok(match name {
            Some(n) => l.named(&n),
            None => l,
        })
    }

    pub fn to_definition(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("name = {n}\n"));
        }
        for (lbl, t) in [("[1,2]", self.c12), ("[1,3]", self.c13), ("[2,3]", self.c23)] {
            s.push_str(&format!("{lbl} = {} {} {}\n", t[0], t[1], t[2]));
        }
        s
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "L[{:?},{:?},{:?}]", self.c12, self.c13, self.c23),
        }
    }
}

/// `f(x) = x^T A x` for an integer matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub a: IMat3,
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClass {
    pub rank: usize,
    /// Determinant of the symmetric part `(A + A^T)/2`.
    pub discriminant: Q,
    /// `b^2 - 4ac` of the binary form when the rank is 2.
    pub rank2_discriminant: Option<i64>,
    /// `(a, b, c)` of the binary form `a y1^2 + b y1 y2 + c y2^2` (rank 2).
    pub binary: Option<(i64, i64, i64)>,
    /// `a` in `f = a * l(x)^2` with `l` primitive (rank 1).
    pub square_coefficient: Option<i64>,
    pub reducible_over_z: bool,
    pub bad_primes: BTreeSet<u64>,
}

impl QuadraticForm {
    pub fn new(a: IMat3) -> Self {
        QuadraticForm { a }
    }

    /// The diagonal form or a form given by its coefficients on
    /// `x1^2, x2^2, x3^2, x1x2, x1x3, x2x3`.
    pub fn from_coefficients(c: [i64; 6]) -> Self {
        QuadraticForm::new([[c[0], c[3], c[4]], [0, c[1], c[5]], [0, 0, c[2]]])
    }

    pub fn zero() -> Self {
        Self::new([[0; 3]; 3])
    }

    /// `A + A^T`, i.e. twice the symmetric part.
    pub fn doubled_symmetric(&self) -> IMat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.a[i][j] + self.a[j][i]))
    }

    /// Coefficients on `x1^2, x2^2, x3^2, x1x2, x1x3, x2x3`.
    pub fn coefficients(&self) -> [i64; 6] {
        let a = &self.a;
        [a[0][0], a[1][1], a[2][2], a[0][1] + a[1][0], a[0][2] + a[2][0], a[1][2] + a[2][1]]
    }

    pub fn eval(&self, x: &[i64; 3]) -> i64 {
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                s += self.a[i][j] * x[i] * x[j];
            }
        }
        s
    }

    pub fn eval_wide(&self, x: &[i128; 3]) -> i128 {
        let mut s = 0i128;
        for i in 0..3 {
            for j in 0..3 {
                s += self.a[i][j] as i128 * x[i] * x[j];
            }
        }
        s
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| self.a[i][j] * c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|&c| c == 0)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficients();
        let names = ["x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"];
        let mut out = String::new();
        for (k, n) in c.iter().zip(names) {
            if *k == 0 {
                continue;
            }
            let sign = if *k < 0 { "-" } else { "+" };
            let a = k.abs();
            let body = if a == 1 { n.to_string() } else { format!("{a}*{n}") };
            if out.is_empty() {
                out = if *k < 0 { format!("-{body}") } else { body };
            } else {
                out.push_str(&format!(" {sign} {body}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

fn prime_factors(n: &num_bigint::BigInt, out: &mut BTreeSet<u64>) {
    use num_traits::ToPrimitive;
    let mut n = n.abs().to_u64().expect("discriminant fits in u64");
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.insert(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

/// Unimodular matrix whose last column is the primitive vector `r`.
fn complete_to_unimodular(r: [i64; 3]) -> IMat3 {
    // row operations V with V r = (0, 0, g); then U = V^{-1}
    let mut v: IMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut x = r;
    loop {
        let nz: Vec<usize> = (0..3).filter(|&i| x[i] != 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            if i != 2 {
                x.swap(i, 2);
                v.swap(i, 2);
            }
            break;
        }
        // reduce every other entry by the smallest one
        let piv = *nz.iter().min_by_key(|&&i| x[i].abs()).unwrap();
        for &i in &nz {
            if i != piv {
                let f = Integer::div_floor(&x[i], &x[piv]);
                x[i] -= f * x[piv];
                for c in 0..3 {
                    v[i][c] -= f * v[piv][c];
                }
            }
        }
    }
    if x[2] < 0 {
        for c in 0..3 {
            v[2][c] = -v[2][c];
        }
    }
    // det V = +-1, so the adjugate is the inverse up to sign
    let vq = mat::from_int(&v);
    let inv = mat::inverse(&vq).expect("unimodular");
    std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].to_integer().try_into().unwrap()))
}

/// Rank, discriminants, reducibility and bad primes of `f`.
pub fn classify(f: &QuadraticForm) -> FormClass {
    let s2 = f.doubled_symmetric();
    let s2q = mat::from_int(&s2);
    let rank = mat::rank(&s2q);
    let discriminant = mat::det(&s2q) / q(8);
    let mut bad = BTreeSet::from([2u64]);
    let mut class = FormClass {
        rank,
        discriminant: discriminant.clone(),
        rank2_discriminant: None,
        binary: None,
        square_coefficient: None,
        reducible_over_z: rank <= 1,
        bad_primes: BTreeSet::new(),
    };
    match rank {
        3 => {
            prime_factors(discriminant.numer(), &mut bad);
            prime_factors(discriminant.denom(), &mut bad);
        }
        2 => {
            // radical direction: cross product of two independent rows
            let rows = [s2[0], s2[1], s2[2]];
            let mut r = [0i64; 3];
            'outer: for i in 0..3 {
                for j in i + 1..3 {
                    let (a, b) = (rows[i], rows[j]);
                    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
                    if c != [0, 0, 0] {
                        r = c;
                        break 'outer;
                    }
                }
            }
            let g = r.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            let r = [r[0] / g, r[1] / g, r[2] / g];
            let u = complete_to_unimodular(r);
            let u1 = [u[0][0], u[1][0], u[2][0]];
            let u2 = [u[0][1], u[1][1], u[2][1]];
            let a = f.eval(&u1);
            let c = f.eval(&u2);
            let b = f.eval(&[u1[0] + u2[0], u1[1] + u2[1], u1[2] + u2[2]]) - a - c;
            let d = b * b - 4 * a * c;
            let lead = if a != 0 { a } else if c != 0 { c } else { b };
            prime_factors(&(lead * d).into(), &mut bad);
            class.rank2_discriminant = Some(d);
            class.binary = Some((a, b, c));
            class.reducible_over_z = is_square(d);
        }
        1 => {
            let row = s2.iter().find(|r| r.iter().any(|&x| x != 0)).unwrap();
            let g = row.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            let mut l = [row[0] / g, row[1] / g, row[2] / g];
            if l.iter().find(|&&x| x != 0).map_or(false, |&x| x < 0) {
                l = [-l[0], -l[1], -l[2]];
            }
            // f = a l^2: read a off a diagonal entry with l_i != 0
            let i = (0..3).find(|&i| l[i] != 0).unwrap();
            let a = f.a[i][i] / (l[i] * l[i]);
            prime_factors(&a.into(), &mut bad);
            class.square_coefficient = Some(a);
        }
        _ => {}
    }
    class.bad_primes = bad;
    class
}

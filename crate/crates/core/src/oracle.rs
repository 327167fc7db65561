//! Brute-force ground truth: every sublattice of `Z^3` of `p`-power index in
//! Hermite normal form, the exact subalgebra test and the cotype census.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_integer::Integer;

use crate::arith::{is_prime, valuation};
use crate::cotype::{route, LocalFormula, Route};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::ratfun::{series_coefficients, Q};

/// Largest number of lattices a census may visit.
pub const DEFAULT_LATTICE_BUDGET: u64 = 20_000_000;

/// Upper triangular basis; rows are basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HnfBasis {
    pub m: [[i64; 3]; 3],
}

impl HnfBasis {
    pub fn identity() -> Self {
        HnfBasis { m: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] }
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] * self.m[2][2]
    }

    pub fn scaled(&self, c: i64) -> Self {
        HnfBasis { m: self.m.map(|r| r.map(|x| x * c)) }
    }
}

impl fmt::Display for HnfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.m.iter().map(|r| format!("{} {} {}", r[0], r[1], r[2])).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Number of sublattices of index `p^n`, saturating at `u64::MAX`.
pub fn sublattice_count(p: u64, n: u32) -> u64 {
    let mut total: u64 = 0;
    for a1 in 0..=n {
        for a2 in 0..=n - a1 {
            let a3 = n - a1 - a2;
            let term = p.saturating_pow(a2).saturating_mul(p.saturating_pow(2 * a3));
            total = total.saturating_add(term);
        }
    }
    total
}

fn diagonal_types(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a1 in 0..=n {
        for a2 in 0..=n - a1 {
            out.push([a1, a2, n - a1 - a2]);
        }
    }
    out
}

/// Calls `f` on every sublattice of index `p^n` without collecting them.
pub fn for_each_sublattice<F: FnMut(&HnfBasis)>(p: u64, n: u32, mut f: F) {
    for a in diagonal_types(n) {
        for_each_with_diagonal(p, a, &mut f);
    }
}

fn for_each_with_diagonal<F: FnMut(&HnfBasis)>(p: u64, a: [u32; 3], f: &mut F) {
    let d = a.map(|e| p.pow(e) as i64);
    let mut b = HnfBasis { m: [[d[0], 0, 0], [0, d[1], 0], [0, 0, d[2]]] };
    for m01 in 0..d[1] {
        b.m[0][1] = m01;
        for m02 in 0..d[2] {
            b.m[0][2] = m02;
            for m12 in 0..d[2] {
                b.m[1][2] = m12;
                f(&b);
            }
        }
    }
}

fn check_budget(p: u64, n_max: u32, budget: u64) -> Result<u64> {
    let total = (0..=n_max).fold(0u64, |acc, n| acc.saturating_add(sublattice_count(p, n)));
    if total > budget {
        return Err(Error::Budget(format!(
            "{total} lattices of index at most {p}^{n_max} exceed the budget of {budget}"
        )));
    }
    Ok(total)
}

/// Every sublattice of index `p^n`, each exactly once.
pub fn enumerate_sublattices(p: u64, n: u32) -> Result<Vec<HnfBasis>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if sublattice_count(p, n) > DEFAULT_LATTICE_BUDGET {
        return Err(Error::Budget(format!("{} lattices of index {p}^{n}", sublattice_count(p, n))));
    }
    let mut out = Vec::new();
    for a in diagonal_types(n) {
        for_each_with_diagonal(p, a, &mut |b| out.push(*b));
    }
    Ok(out)
}

fn adjugate(m: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let c = |r: usize, s: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != s).collect();
        let v = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
        if (r + s) % 2 == 0 {
            v
        } else {
            -v
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i)))
}

fn det_wide(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Whether the row span of `m` is closed under the bracket.
///
/// `[m_i, m_j] adj(M)` must be divisible by `det M` entrywise. Works for any
/// non-singular integer matrix.
pub fn is_subalgebra_matrix(m: &[[i64; 3]; 3], l: &LieAlgebra) -> bool {
    let w: [[i128; 3]; 3] = m.map(|r| r.map(|x| x as i128));
    let det = det_wide(&w);
    if det == 0 {
        return false;
    }
    let adj = adjugate(&w);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let b = l.bracket_wide(&w[i], &w[j]);
        for col in 0..3 {
            let c: i128 = (0..3).map(|k| b[k] * adj[k][col]).sum();
            if c % det != 0 {
                return false;
            }
        }
    }
    true
}

pub fn is_subalgebra(b: &HnfBasis, l: &LieAlgebra) -> bool {
    is_subalgebra_matrix(&b.m, l)
}

/// Elementary divisors `d1 | d2 | d3` by integer Smith reduction.
pub fn elementary_divisors(m: &[[i64; 3]; 3]) -> [i128; 3] {
    let mut a: [[i128; 3]; 3] = m.map(|r| r.map(|x| x as i128));
    let mut out = [0i128; 3];
    for t in 0..3 {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..3 {
                for j in t..3 {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..3 {
                let f = Integer::div_floor(&a[i][t], &piv);
                for j in t..3 {
                    a[i][j] -= f * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..3 {
                let f = Integer::div_floor(&a[t][j], &piv);
                for i in t..3 {
                    a[i][j] -= f * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..3).flat_map(|i| (t + 1..3).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % piv != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..3 {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        out[t] = a[t][t].abs();
    }
    out
}

/// Cotype exponents `(c1, c2, c3)`, largest first.
pub type Cotype = [u32; 3];

pub fn cotype_of(m: &[[i64; 3]; 3], p: u64) -> Cotype {
    let d = elementary_divisors(m);
    [valuation(d[2], p), valuation(d[1], p), valuation(d[0], p)]
}

/// Subalgebra counts by cotype.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotypeCensus {
    pub p: u64,
    pub max_n: u32,
    pub counts: BTreeMap<Cotype, u64>,
    /// Number of lattices examined.
    pub visited: u64,
}

impl CotypeCensus {
    pub fn count(&self, c: Cotype) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    /// Subalgebras of index `p^n`.
    pub fn total_at(&self, n: u32) -> u64 {
        self.counts.iter().filter(|(c, _)| c.iter().sum::<u32>() == n).map(|(_, k)| k).sum()
    }
}

impl fmt::Display for CotypeCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c1 c2 c3 count")?;
        for (c, k) in &self.counts {
            writeln!(f, "{} {} {} {k}", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// Largest index exponent the default budgets allow at `p`.
pub fn default_max_exponent(p: u64) -> u32 {
    match p {
        2 => 8,
        3 => 6,
        5 => 4,
        7 => 3,
        _ => {
            let mut n = 0;
            while check_budget(p, n + 1, 2_000_000).is_ok() {
                n += 1;
            }
            n
        }
    }
}

pub fn census(l: &LieAlgebra, p: u64, n_max: u32) -> Result<CotypeCensus> {
    census_with_budget(l, p, n_max, DEFAULT_LATTICE_BUDGET)
}

/// Counts subalgebras by cotype for all indices up to `p^n_max`. Diagonal
/// types are independent and shared out across threads.
pub fn census_with_budget(l: &LieAlgebra, p: u64, n_max: u32, budget: u64) -> Result<CotypeCensus> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let visited = check_budget(p, n_max, budget)?;
    let work: Vec<[u32; 3]> = (0..=n_max).flat_map(diagonal_types).collect();
    let next = AtomicUsize::new(0);
    let merged: Mutex<BTreeMap<Cotype, u64>> = Mutex::new(BTreeMap::new());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(work.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| {
                let mut local: BTreeMap<Cotype, u64> = BTreeMap::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&a) = work.get(i) else { break };
                    for_each_with_diagonal(p, a, &mut |b| {
                        if is_subalgebra(b, l) {
                            *local.entry(cotype_of(&b.m, p)).or_insert(0) += 1;
                        }
                    });
                }
                let mut g = merged.lock().expect("census lock");
                for (c, k) in local {
                    *g.entry(c).or_insert(0) += k;
                }
            });
        }
    });
    Ok(CotypeCensus { p, max_n: n_max, counts: merged.into_inner().expect("census lock"), visited })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub cotype: Cotype,
    pub census: u64,
    pub formula: Q,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub algebra: String,
    pub p: u64,
    pub max_n: u32,
    pub formula: LocalFormula,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} at p = {}, index up to p^{}: {} cotypes checked against formula for {} ({})",
            self.algebra, self.p, self.max_n, self.checked, self.formula.algebra, self.formula.validity
        )?;
        for m in &self.mismatches {
            writeln!(
                f,
                "mismatch at cotype ({}, {}, {}): census {} formula {}",
                m.cotype[0], m.cotype[1], m.cotype[2], m.census, m.formula
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Census against the series of `formula`, or of the routed formula.
pub fn compare(l: &LieAlgebra, p: u64, n_max: u32, formula: Option<&LocalFormula>) -> Result<CompareReport> {
    let formula = match formula {
        Some(f) => f.clone(),
        None => match route(l, Some(p)) {
            Route::Formula(f) => f,
            Route::NoFormula { p, reason } => return Err(Error::NoFormula { p, reason }),
        },
    };
    let w = formula.at_prime(p)?;
    let series = series_coefficients(&w, p, n_max, 3)?;
    let census = census(l, p, n_max)?;
    let mut mismatches = Vec::new();
    for (k, v) in &series {
        let c: Cotype = [k[0], k[1], k[2]];
        let n = census.count(c);
        if Q::from_integer(n.into()) != *v {
            mismatches.push(Mismatch { cotype: c, census: n, formula: v.clone() });
        }
    }
    Ok(CompareReport {
        algebra: l.name().unwrap_or("custom").to_string(),
        p,
        max_n: n_max,
        formula,
        checked: series.len(),
        mismatches,
    })
}

//! Exact sparse Laurent polynomials and rational functions over the rationals.

mod cyclo;
mod monomial;
mod parse;
mod poly;
mod rational;
mod series;

pub use cyclo::{cyclotomic, cyclotomic_split, cyclotomics_to_binomials, as_univariate, mobius};
pub use monomial::{Monomial, Var, MAX_DIM, NVARS};
pub use parse::parse;
pub use poly::{pow_q, q, q_to_f64, qf, Polynomial, Q};
pub use rational::RationalFunction;
pub use series::{expand, series_coefficients, Coefficients};

/// Shorthand for monomials: `mono(&[(Var::X, 2), (Var::Y(1), 1)])`.
pub fn mono(pairs: &[(Var, i32)]) -> Monomial {
    Monomial::from_pairs(pairs)
}

/// Parses a literal known to be well formed; panics otherwise.
pub fn rf(s: &str) -> RationalFunction {
    parse(s).unwrap_or_else(|e| panic!("bad literal {s:?}: {e}"))
}

use std::str::FromStr;

use num_bigint::BigInt;

use super::monomial::{Monomial, Var};
use super::poly::Q;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().unwrap())));
                continue;
            }
            b'A'..=b'Z' => {
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let name = &s[start..i];
                let v = Var::parse(name).ok_or_else(|| Error::Parse {
                    pos: start,
                    msg: format!("unknown variable {name}"),
                })?;
                out.push((start, Tok::Var(v)));
                continue;
            }
            _ => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character {:?}", c as char) })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

type Product = Vec<(RationalFunction, i32)>;

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.to_string() })
    }

    /// A sum collapses to one rational function; a single product keeps its
    /// factors so that `a / (f*g)` yields two denominator factors.
    fn expr(&mut self) -> Result<Product> {
        let lead = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Some(true)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        };
        let mut first = self.term()?;
        if lead == Some(true) {
            first.push((RationalFunction::int(-1), 1));
        }
        if !matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            return Ok(first);
        }
        let mut acc = self.collapse(first)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&self.collapse(t)?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&self.collapse(t)?);
                }
                _ => return Ok(vec![(acc, 1)]),
            }
        }
    }

    fn collapse(&self, p: Product) -> Result<RationalFunction> {
        let mut acc = RationalFunction::one();
        for (f, e) in p {
            let v = f.pow(e).map_err(|_| Error::Parse { pos: self.here(), msg: "division by zero".into() })?;
            acc = acc.mul(&v);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Product> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc.extend(self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.factor()?;
                    for (f, e) in d {
                        if f.is_zero() {
                            return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                        }
                        acc.push((f, -e));
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Product> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let mut f = self.factor()?;
            f.push((RationalFunction::int(-1), 1));
            return Ok(f);
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            let e = self.exponent()?;
            if e < 0 && base.iter().any(|(f, _)| f.is_zero()) {
                return Err(Error::Parse { pos: at, msg: "zero to a negative power".into() });
            }
            return Ok(base.into_iter().map(|(f, k)| (f, k * e)).collect());
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = matches!(self.peek(), Some(Tok::LParen));
        if paren {
            self.pos += 1;
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.pos += 1;
        }
        let e: i32 = match self.peek() {
            Some(Tok::Int(n)) => match i32::try_from(n.clone()) {
                Ok(v) => v,
                Err(_) => return self.err("exponent too large"),
            },
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        if paren {
            if self.peek() != Some(&Tok::RParen) {
                return self.err("expected ')'");
            }
            self.pos += 1;
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Product> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(vec![(RationalFunction::constant(Q::from_integer(n)), 1)])
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(vec![(RationalFunction::monomial(Monomial::var(v, 1)), 1)])
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.err("expected number, variable or '('"),
        }
    }
}

/// Parses the interchange format, e.g. `(1 + Y1 + X*Y1) / ((1 - X^2*Y1)*(1 - Y1*Y2*Y3))`.
pub fn parse(s: &str) -> Result<RationalFunction> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    p.collapse(r)
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

//! Text form of polynomials: `c*x1^a1*...` sums, with parentheses.

use super::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// Names of ring variables used for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableNames {
    names: Vec<String>,
}

impl VariableNames {
    /// `x1, ..., xn`.
    pub fn indexed(n: usize) -> Self {
        VariableNames { names: (1..=n).map(|i| format!("x{i}")).collect() }
    }

    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::input(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::input(format!("duplicate variable name {n:?}")));
            }
        }
        Ok(VariableNames { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    fn index_of(&self, s: &str) -> Option<usize> {
        self.names.iter().position(|n| n == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::input(format!("unexpected character {c:?} at column {}", i + 1)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a VariableNames,
    src_len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| c + 1).unwrap_or(self.src_len + 1)
    }

    fn err(&self, what: &str) -> Error {
        Error::input(format!("{what} at column {}", self.column()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars());
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// A product of factors, kept separate.
    fn factors(&mut self) -> Result<Vec<Poly>> {
        let mut out = self.power()?;
        loop {
            if self.eat('*') {
                out.extend(self.power()?);
            } else if self.eat('/') {
                let col = self.column();
                let d = self.power()?;
                let d = d.into_iter().fold(Poly::one(self.nvars()), |a, b| &a * &b);
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::input(format!(
                        "division by a non-constant or zero at column {col}"
                    )));
                }
                let c = d.coefficient(&Monomial::one(self.nvars()));
                out.push(Poly::constant(self.nvars(), c.inv()));
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Poly> {
        let fs = self.factors()?;
        Ok(fs.into_iter().fold(Poly::one(self.nvars()), |a, b| &a * &b))
    }

    /// `atom ^ n` expands into `n` copies of the atom.
    fn power(&mut self) -> Result<Vec<Poly>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    if e > 64 {
                        return Err(self.err("exponent too large"));
                    }
                    Ok(vec![base; e as usize])
                        .map(|v| if v.is_empty() { vec![Poly::one(self.nvars())] } else { v })
                }
                _ => Err(self.err("expected exponent")),
            }
        } else {
            Ok(vec![base])
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let v: Rational = n.parse().map_err(|_| self.err("bad number"))?;
                Ok(Poly::constant(self.nvars(), v))
            }
            Some(Tok::Ident(id)) => match self.names.index_of(&id) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(self.nvars(), i))
                }
                None => Err(self.err(&format!("unknown variable {id:?}"))),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            Some(_) => Err(self.err("unexpected token")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parser<'a>(s: &str, names: &'a VariableNames) -> Result<Parser<'a>> {
    Ok(Parser { toks: tokenize(s)?, pos: 0, names, src_len: s.chars().count() })
}

/// Parses a polynomial such as `3/2*x1^2 - (x2 + x3)*x1`.
pub fn parse_poly(s: &str, names: &VariableNames) -> Result<Poly> {
    let mut p = parser(s, names)?;
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a product and returns its non-constant factors, with powers
/// expanded into repeated factors. A constant factor is folded into the
/// first one. Used to read complete-intersection generators given as
/// products of linear forms.
pub fn parse_factors(s: &str, names: &VariableNames) -> Result<Vec<Poly>> {
    let mut p = parser(s, names)?;
    let save = p.pos;
    let fs = p.factors()?;
    if p.pos != p.toks.len() {
        // a top-level sum: the whole expression is a single factor
        p.pos = save;
        return Ok(vec![parse_poly(s, names)?]);
    }
    let n = names.len();
    let mut constant = Rational::one();
    let mut out = Vec::new();
    for f in fs {
        if f.is_constant() {
            constant = &constant * &f.coefficient(&Monomial::one(n));
        } else {
            out.push(f);
        }
    }
    if out.is_empty() {
        return Ok(vec![Poly::constant(n, constant)]);
    }
    out[0] = out[0].scale(&constant);
    Ok(out)
}

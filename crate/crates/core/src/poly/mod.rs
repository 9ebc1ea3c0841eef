//! Exact multivariate polynomials over the rationals.

mod monomial;
mod parse;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use monomial::{monomial_compare, Monomial, MonomialOrder, MAX_VARS};
pub(crate) use monomial::{Key, KEY_LEN};
pub use parse::{parse_factors, parse_poly, VariableNames};
pub use rational::{denominator_lcm, ParseRationalError, Rational};

use crate::error::{Error, Result};

/// A polynomial in `nvars` variables. Terms are kept sorted in descending
/// degrevlex order with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Poly { nvars, terms: vec![(Monomial::var(nvars, i), Rational::one())] }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        Self::from_terms(m.nvars(), [(m, c)])
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let ord = MonomialOrder::DegRevLex;
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        debug_assert!(v.iter().all(|(m, _)| m.nvars() == nvars));
        v.sort_by(|a, b| ord.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Leading term with respect to degrevlex.
    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::input(format!(
                "polynomials live in rings with {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        let ord = MonomialOrder::DegRevLex;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let take = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                ord.compare(&a[i].0, &b[j].0)
            };
            match take {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_terms(self.nvars, acc)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        // multiplication by a monomial preserves the order
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(tm, a)| (tm.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::input(format!(
                "variable index {i} out of range for {} variables",
                self.nvars
            )));
        }
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(i) > 0).map(|(m, c)| {
            let e = m.exponent(i);
            let mut ex: Vec<u32> = m.exponents().iter().map(|&x| x as u32).collect();
            ex[i] -= 1;
            let dm = Monomial::from_exponents(&ex).expect("same ring");
            (dm, c * &Rational::from_int(e as i64))
        });
        Ok(Poly::from_terms(self.nvars, terms))
    }

    /// All partial derivatives `(df/dx_1, ..., df/dx_n)`.
    pub fn differential(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial_derivative(i).expect("index in range")).collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    v = &v * x;
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Coefficient vector if this is a homogeneous linear form.
    pub fn as_linear_form(&self) -> Option<Vec<Rational>> {
        if self.homogeneous_degree() != Some(1) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.nvars];
        for (m, c) in &self.terms {
            let i = (0..self.nvars).find(|&i| m.exponent(i) == 1)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Integer coefficients with no common factor and a positive leading
    /// coefficient.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        use num_traits::{One, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(self.terms.iter().map(|(_, c)| c));
        let ints: Vec<num_bigint::BigInt> =
            self.terms.iter().map(|(_, c)| c.numer() * (&l / c.denom())).collect();
        let mut g = num_bigint::BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        if g.is_zero() {
            g = num_bigint::BigInt::one();
        }
        if ints[0] < num_bigint::BigInt::zero() {
            g = -g;
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), n)| (*m, Rational::from_bigint(n / &g)))
                .collect(),
        }
    }

    /// Embeds into a ring with `extra` new variables placed first.
    pub(crate) fn prepend_vars(&self, extra: usize) -> Poly {
        Poly::from_terms(
            self.nvars + extra,
            self.terms.iter().map(|(m, c)| (m.prepend_vars(extra), c.clone())),
        )
    }

    /// Inverse of [`Poly::prepend_vars`]; `None` if a dropped variable occurs.
    pub(crate) fn drop_leading_vars(&self, extra: usize) -> Option<Poly> {
        let terms: Option<Vec<_>> = self
            .terms
            .iter()
            .map(|(m, c)| m.drop_leading_vars(extra).map(|dm| (dm, c.clone())))
            .collect();
        Some(Poly::from_terms(self.nvars - extra, terms?))
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a VariableNames) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, names }
    }
}

/// Checked product: fails when the rings differ.
pub fn poly_multiply(f: &Poly, g: &Poly) -> Result<Poly> {
    f.checked_mul(g)
}

/// Checked partial derivative.
pub fn partial_derivative(f: &Poly, i: usize) -> Result<Poly> {
    f.partial_derivative(i)
}

struct DisplayPoly<'a> {
    poly: &'a Poly,
    names: &'a VariableNames,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for i in 0..m.nvars() {
                match m.exponent(i) {
                    0 => {}
                    1 => parts.push(self.names.name(i).to_string()),
                    e => parts.push(format!("{}^{e}", self.names.name(i))),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VariableNames::indexed(self.nvars);
        fmt::Display::fmt(&DisplayPoly { poly: self, names: &names }, f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs).expect("ring mismatch");
        self.add_impl(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

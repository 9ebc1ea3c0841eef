use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::binomial;
use serde::{Deserialize, Serialize};

/// Laurent polynomial in one variable with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    /// exponent -> nonzero coefficient
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// From ascending coefficients starting at `x^low`.
    pub fn from_coeffs(low: i64, cs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in cs.iter().enumerate() {
            p.add_term(low + i as i64, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (&e, &c) in &self.coeffs {
            p.add_term(e, c * k);
        }
        p
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `(1 - x)^e`.
    pub fn one_minus_x_pow(e: u32) -> Self {
        let mut p = Self::zero();
        for i in 0..=e as i64 {
            let b = binomial(e as i64, i);
            p.add_term(i, if i % 2 == 0 { b } else { -b });
        }
        p
    }

    /// Exact division by `(1 - x)`, or `None` if the remainder is nonzero.
    pub fn div_one_minus_x(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.eval_at_one() != 0 {
            return None;
        }
        // q(x) (1 - x) = p(x): q_e = sum_{f <= e} p_f
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut q = Self::zero();
        let mut acc = 0;
        for e in lo..hi {
            acc += self.coefficient(e);
            q.add_term(e, acc);
        }
        Some(q)
    }

    /// Coefficients `x^low .. x^high` in ascending order.
    pub fn dense(&self, low: i64, high: i64) -> Vec<i64> {
        (low..=high).map(|e| self.coefficient(e)).collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&e, &c) in &rhs.coeffs {
            p.add_term(e, c);
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&a, &c) in &self.coeffs {
            for (&b, &d) in &rhs.coeffs {
                p.add_term(a + b, c * d);
            }
        }
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().rev().map(|(&e, &c)| (c, monomial_str("x", e))))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn monomial_str(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Writes `c1*m1 + c2*m2 ...` with signs folded in; empty monomials are constants.
pub(crate) fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, m) in terms {
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        let a = c.abs();
        match (a, m.is_empty()) {
            (_, true) => write!(f, "{a}")?,
            (1, false) => write!(f, "{m}")?,
            (_, false) => write!(f, "{a}*{m}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Hilbert-Poincaré series `numerator / (1 - x)^denominator_exp`, kept in
/// lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    numerator: LaurentPoly,
    denominator_exp: u32,
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPoly, denominator_exp: u32) -> Self {
        let mut s = HilbertSeries { numerator, denominator_exp };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        HilbertSeries { numerator: LaurentPoly::zero(), denominator_exp: 0 }
    }

    /// Series of the polynomial ring in `n` variables.
    pub fn free(n: u32) -> Self {
        Self::new(LaurentPoly::one(), n)
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.denominator_exp = 0;
            return;
        }
        while self.denominator_exp > 0 {
            match self.numerator.div_one_minus_x() {
                Some(q) => {
                    self.numerator = q;
                    self.denominator_exp -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator_exp(&self) -> u32 {
        self.denominator_exp
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator over `(1 - x)^e`, for `e` at least the canonical exponent.
    pub fn numerator_over(&self, e: u32) -> LaurentPoly {
        assert!(e >= self.denominator_exp, "cannot lower the denominator exponent");
        &self.numerator * &LaurentPoly::one_minus_x_pow(e - self.denominator_exp)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        HilbertSeries { numerator: self.numerator.shift(k), denominator_exp: self.denominator_exp }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.numerator.scale(k), self.denominator_exp)
    }

    /// Coefficient of `x^p` in the power series expansion.
    pub fn coefficient(&self, p: i64) -> i64 {
        let e = self.denominator_exp as i64;
        self.numerator
            .terms()
            .filter(|&(k, _)| k <= p)
            .map(|(k, c)| {
                let m = p - k;
                let ways = if e == 0 {
                    i64::from(m == 0)
                } else {
                    binomial(m + e - 1, e - 1)
                };
                c * ways
            })
            .sum()
    }

    /// Krull dimension of the module: the pole order at `x = 1`.
    pub fn dimension(&self) -> u32 {
        self.denominator_exp
    }
}

impl Add for &HilbertSeries {
    type Output = HilbertSeries;
    fn add(self, rhs: &HilbertSeries) -> HilbertSeries {
        let e = self.denominator_exp.max(rhs.denominator_exp);
        HilbertSeries::new(&self.numerator_over(e) + &rhs.numerator_over(e), e)
    }
}

impl Sub for &HilbertSeries {
    type Output = HilbertSeries;
    fn sub(self, rhs: &HilbertSeries) -> HilbertSeries {
        self + &rhs.scale(-1)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denominator_exp {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({})/(1 - x)", self.numerator),
            e => write!(f, "({})/(1 - x)^{e}", self.numerator),
        }
    }
}

impl fmt::Debug for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

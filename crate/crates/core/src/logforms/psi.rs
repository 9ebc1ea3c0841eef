use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arrangement::CharPoly;
use crate::resolution::LaurentPoly;

/// Element of `ℤ[x, x⁻¹, t]`, stored as a polynomial in `t` whose
/// coefficients are Laurent polynomials in `x`.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PsiPolynomial {
    /// `t_coeffs[a]` is the coefficient of `t^a`; no trailing zeros
    t_coeffs: Vec<LaurentPoly>,
}

impl PsiPolynomial {
    pub fn new(mut t_coeffs: Vec<LaurentPoly>) -> Self {
        while t_coeffs.last().is_some_and(LaurentPoly::is_zero) {
            t_coeffs.pop();
        }
        PsiPolynomial { t_coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Constant in `t`.
    pub fn from_x(p: LaurentPoly) -> Self {
        Self::new(vec![p])
    }

    /// From `(c, a, b)` triples meaning `c·x^a·t^b`.
    pub fn from_terms(terms: &[(i64, i64, usize)]) -> Self {
        let top = terms.iter().map(|&(_, _, b)| b + 1).max().unwrap_or(0);
        let mut cs = vec![LaurentPoly::zero(); top];
        for &(c, a, b) in terms {
            cs[b].add_term(a, c);
        }
        Self::new(cs)
    }

    /// `t^a`.
    pub fn t_pow(a: usize) -> Self {
        let mut cs = vec![LaurentPoly::zero(); a + 1];
        cs[a] = LaurentPoly::one();
        Self::new(cs)
    }

    /// The factor `t(1 - x) - 1` of the Ψ-functions.
    pub fn d_factor() -> Self {
        Self::new(vec![LaurentPoly::monomial(0, -1), LaurentPoly::one_minus_x_pow(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.t_coeffs.is_empty()
    }

    pub fn t_coefficient(&self, a: usize) -> LaurentPoly {
        self.t_coeffs.get(a).cloned().unwrap_or_default()
    }

    pub fn t_coeffs(&self) -> &[LaurentPoly] {
        &self.t_coeffs
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.t_coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::t_pow(0), |acc, _| &acc * self)
    }

    /// Multiplication by `x^k`.
    pub fn shift_x(&self, k: i64) -> Self {
        Self::new(self.t_coeffs.iter().map(|c| c.shift(k)).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.t_coeffs.iter().map(|c| c.scale(k)).collect())
    }

    /// `Ψ(1, t)`.
    pub fn at_x_one(&self) -> CharPoly {
        CharPoly::new(self.t_coeffs.iter().map(LaurentPoly::eval_at_one).collect())
    }

    /// `Ψ(x, t0)`.
    pub fn at_t(&self, t0: i64) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.t_coeffs.iter().rev() {
            acc = &acc.scale(t0) + c;
        }
        acc
    }

    /// `Ψ(1, 1)`.
    pub fn at_one(&self) -> i64 {
        self.at_t(1).eval_at_one()
    }

    /// Exact quotient by a divisor whose `t⁰` coefficient is `±1`, or
    /// `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &PsiPolynomial) -> Option<Self> {
        let d0 = divisor.t_coefficient(0);
        let unit = if d0 == LaurentPoly::one() {
            1
        } else if d0 == LaurentPoly::monomial(0, -1) {
            -1
        } else {
            return None;
        };
        let n = self.t_coeffs.len();
        let m = divisor.t_coeffs.len();
        if n == 0 {
            return Some(Self::zero());
        }
        if n < m {
            return None;
        }
        let mut q: Vec<LaurentPoly> = Vec::with_capacity(n - m + 1);
        for a in 0..=(n - m) {
            let mut r = self.t_coeffs[a].clone();
            for b in 1..m.min(a + 1) {
                r = &r - &(&divisor.t_coeffs[b] * &q[a - b]);
            }
            q.push(r.scale(unit));
        }
        let q = Self::new(q);
        (&q * divisor == *self).then_some(q)
    }
}

impl Add for &PsiPolynomial {
    type Output = PsiPolynomial;
    fn add(self, rhs: &PsiPolynomial) -> PsiPolynomial {
        let n = self.t_coeffs.len().max(rhs.t_coeffs.len());
        PsiPolynomial::new((0..n).map(|a| &self.t_coefficient(a) + &rhs.t_coefficient(a)).collect())
    }
}

impl Sub for &PsiPolynomial {
    type Output = PsiPolynomial;
    fn sub(self, rhs: &PsiPolynomial) -> PsiPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &PsiPolynomial {
    type Output = PsiPolynomial;
    fn neg(self) -> PsiPolynomial {
        self.scale(-1)
    }
}

impl Mul for &PsiPolynomial {
    type Output = PsiPolynomial;
    fn mul(self, rhs: &PsiPolynomial) -> PsiPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return PsiPolynomial::zero();
        }
        let mut cs = vec![LaurentPoly::zero(); self.t_coeffs.len() + rhs.t_coeffs.len() - 1];
        for (a, p) in self.t_coeffs.iter().enumerate() {
            for (b, q) in rhs.t_coeffs.iter().enumerate() {
                cs[a + b] = &cs[a + b] + &(p * q);
            }
        }
        PsiPolynomial::new(cs)
    }
}

/// Terms are listed by decreasing power of `t`, then decreasing power of `x`.
impl fmt::Display for PsiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, coeff) in self.t_coeffs.iter().enumerate().rev() {
            let terms: Vec<(i64, i64)> = coeff.terms().collect();
            for &(a, c) in terms.iter().rev() {
                if first {
                    if c < 0 {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
                }
                first = false;
                let mut parts = Vec::new();
                match a {
                    0 => {}
                    1 => parts.push("x".to_string()),
                    _ => parts.push(format!("x^{a}")),
                }
                match b {
                    0 => {}
                    1 => parts.push("t".to_string()),
                    _ => parts.push(format!("t^{b}")),
                }
                let abs = c.abs();
                if parts.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs == 1 {
                    write!(f, "{}", parts.join("*"))?;
                } else {
                    write!(f, "{abs}*{}", parts.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PsiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

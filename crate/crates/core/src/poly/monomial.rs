use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of ring variables supported, auxiliary variables included.
pub const MAX_VARS: usize = 8;

/// Length of a precomputed comparison key.
pub(crate) const KEY_LEN: usize = 2 * MAX_VARS + 4;

/// Precomputed sort key: comparing keys lexicographically compares terms.
pub(crate) type Key = [i32; KEY_LEN];

/// Exponent vector of a monomial in `nvars` variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::input(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                exps.len()
            )));
        }
        let mut m = Self::one(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| Error::input("exponent too large"))?;
        }
        Ok(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.exponents().iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] += other.exps[i];
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..self.nvars as usize {
            out.exps[i] -= self.exps[i];
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] = out.exps[i].max(other.exps[i]);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] = out.exps[i].min(other.exps[i]);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Bitmask of variables that occur, used to reject divisibility quickly.
    pub(crate) fn support_mask(&self) -> u32 {
        let mut m = 0u32;
        for i in 0..self.nvars as usize {
            if self.exps[i] > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    /// Same exponents placed into a ring with `extra` new leading variables.
    pub(crate) fn prepend_vars(&self, extra: usize) -> Monomial {
        let n = self.nvars as usize + extra;
        let mut out = Monomial::one(n);
        for i in 0..self.nvars as usize {
            out.exps[i + extra] = self.exps[i];
        }
        out
    }

    /// Drops the first `extra` variables, which must have exponent zero.
    pub(crate) fn drop_leading_vars(&self, extra: usize) -> Option<Monomial> {
        if self.exps[..extra].iter().any(|&e| e != 0) {
            return None;
        }
        let n = self.nvars as usize - extra;
        let mut out = Monomial::one(n);
        out.exps[..n].copy_from_slice(&self.exps[extra..extra + n]);
        Some(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Monomial orders on the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    /// Degrevlex on the first `first_block` variables, ties broken by
    /// degrevlex on the remaining ones. Eliminates the first block.
    Elimination { first_block: usize },
}

fn revlex_into(key: &mut Key, pos: &mut usize, exps: &[u16]) {
    for &e in exps.iter().rev() {
        key[*pos] = -(e as i32);
        *pos += 1;
    }
}

impl MonomialOrder {
    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }

    /// Writes the comparison key of `m` into `key[start..]`, returning the end position.
    pub(crate) fn write_key(&self, m: &Monomial, key: &mut Key, start: usize) -> usize {
        let e = m.exponents();
        let mut pos = start;
        match *self {
            MonomialOrder::DegRevLex => {
                key[pos] = m.degree() as i32;
                pos += 1;
                revlex_into(key, &mut pos, e);
            }
            MonomialOrder::Lex => {
                for &x in e {
                    key[pos] = x as i32;
                    pos += 1;
                }
            }
            MonomialOrder::Elimination { first_block } => {
                let b = first_block.min(e.len());
                key[pos] = e[..b].iter().map(|&x| x as i32).sum();
                pos += 1;
                revlex_into(key, &mut pos, &e[..b]);
                key[pos] = e[b..].iter().map(|&x| x as i32).sum();
                pos += 1;
                revlex_into(key, &mut pos, &e[b..]);
            }
        }
        pos
    }

    pub(crate) fn key(&self, m: &Monomial) -> Key {
        let mut k = [0; KEY_LEN];
        self.write_key(m, &mut k, 0);
        k
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Compares two monomials under `ord`; fails if their lengths differ.
pub fn monomial_compare(a: &Monomial, b: &Monomial, ord: MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::input(format!(
            "monomials live in rings with {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(ord.compare(a, b))
}

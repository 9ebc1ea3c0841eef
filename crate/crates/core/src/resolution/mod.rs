//! Hilbert-Poincaré series, minimal graded free resolutions and Betti tables.

mod series;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{apply_map, syzygies, FreeModuleElement, Ideal, Submodule};
use crate::poly::{Monomial, Rational};

pub use series::{HilbertSeries, LaurentPoly};

/// Minimal generators of a monomial ideal.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N` with `HS(S / J) = N / (1 - x)^n`, for a monomial ideal `J`.
fn quotient_numerator(gens: &[Monomial]) -> LaurentPoly {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens)
}

fn numerator_rec(gens: Vec<Monomial>) -> LaurentPoly {
    if gens.is_empty() {
        return LaurentPoly::one();
    }
    // pairwise coprime generators form a regular sequence
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(LaurentPoly::one(), |acc, m| {
            &acc * &(&LaurentPoly::one() - &LaurentPoly::monomial(m.degree() as i64, 1))
        });
    }
    // N(I + <m>) = N(I) - x^deg(m) N(I : m), splitting off the last generator
    let mut rest = gens;
    let m = rest.pop().unwrap();
    let colon: Vec<Monomial> =
        rest.iter().map(|g| g.gcd(&m).quotient_of(g).expect("gcd divides")).collect();
    let a = numerator_rec(rest);
    let b = quotient_numerator(&colon);
    &a - &b.shift(m.degree() as i64)
}

/// Series of `S / I` for an ideal of the ring in `n` variables.
pub fn hilbert_series_of_quotient_ring(ideal: &Ideal) -> HilbertSeries {
    if ideal.generators().is_empty() {
        return HilbertSeries::free(ideal.nvars() as u32);
    }
    HilbertSeries::new(quotient_numerator(&ideal.leading_monomials()), ideal.nvars() as u32)
}

/// Series of an ideal viewed as a graded module, times `x^offset`.
pub fn hilbert_series_of_ideal(ideal: &Ideal, offset: i64) -> HilbertSeries {
    let n = ideal.nvars() as u32;
    (&HilbertSeries::free(n) - &hilbert_series_of_quotient_ring(ideal)).shift(offset)
}

fn check_homogeneous(m: &Submodule) -> Result<()> {
    if m.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::input("Hilbert series requested for an inhomogeneous module"))
    }
}

/// Per-component leading monomials of the reduced basis.
fn leading_ideals(m: &Submodule) -> Vec<Vec<Monomial>> {
    let mut per: Vec<Vec<Monomial>> = vec![Vec::new(); m.rank()];
    for (c, mon) in m.leading_terms() {
        per[c].push(mon);
    }
    per
}

/// Series of a graded submodule `M ⊆ ⊕ S(-s_i)`, times `x^offset`.
pub fn hilbert_series_of_submodule(m: &Submodule, offset: i64) -> Result<HilbertSeries> {
    check_homogeneous(m)?;
    let n = m.nvars() as u32;
    let mut num = LaurentPoly::zero();
    for (i, lead) in leading_ideals(m).into_iter().enumerate() {
        if lead.is_empty() {
            continue;
        }
        let part = &LaurentPoly::one() - &quotient_numerator(&lead);
        num = &num + &part.shift(m.ambient().shifts[i] as i64);
    }
    Ok(HilbertSeries::new(num.shift(offset), n))
}

/// Series of the quotient `(⊕ S(-s_i)) / M`, times `x^offset`.
pub fn hilbert_series_of_quotient(m: &Submodule, offset: i64) -> Result<HilbertSeries> {
    check_homogeneous(m)?;
    let n = m.nvars() as u32;
    let mut num = LaurentPoly::zero();
    for (i, lead) in leading_ideals(m).into_iter().enumerate() {
        num = &num + &quotient_numerator(&lead).shift(m.ambient().shifts[i] as i64);
    }
    Ok(HilbertSeries::new(num.shift(offset), n))
}

/// Graded free resolution `0 <- M <- F_0 <- F_1 <- ...`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    nvars: usize,
    /// generator degrees of `F_j`
    steps: Vec<Vec<i32>>,
    /// images of the basis of `F_j` in `F_{j-1}` (in the ambient for `j = 0`)
    maps: Vec<Vec<FreeModuleElement>>,
}

impl FreeResolution {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn shifts(&self, j: usize) -> &[i32] {
        &self.steps[j]
    }

    pub fn map(&self, j: usize) -> &[FreeModuleElement] {
        &self.maps[j]
    }

    /// Graded Betti numbers keyed by generator degree.
    pub fn betti(&self) -> Vec<BTreeMap<i32, usize>> {
        self.steps
            .iter()
            .map(|s| {
                let mut m = BTreeMap::new();
                for &e in s {
                    *m.entry(e).or_insert(0) += 1;
                }
                m
            })
            .collect()
    }

    /// Betti table in displayed shifts `S(d - e)`.
    pub fn betti_table(&self, d: i32) -> BettiTable {
        BettiTable {
            steps: self
                .betti()
                .into_iter()
                .map(|m| m.into_iter().map(|(e, k)| (d - e, k)).collect())
                .collect(),
        }
    }
}

/// Minimal generators of `m`, chosen from its generating set in order of
/// degree. Each candidate is kept only if it is not in the span of the
/// lower-degree kept elements plus the same-degree ones kept before it.
pub fn minimal_generators(m: &Submodule) -> Result<Vec<FreeModuleElement>> {
    check_homogeneous(m)?;
    let mut cands: Vec<FreeModuleElement> = m.generators().to_vec();
    cands.sort_by_key(|g| g.degree().unwrap_or(i32::MIN));
    let mut kept: Vec<FreeModuleElement> = Vec::new();
    let mut idx = 0;
    while idx < cands.len() {
        let deg = cands[idx].degree();
        let mut end = idx;
        while end < cands.len() && cands[end].degree() == deg {
            end += 1;
        }
        let lower = Submodule::new(m.ambient().clone(), kept.clone())?;
        let mut echelon = Echelon::default();
        for g in &cands[idx..end] {
            let r = lower.normal_form(g)?;
            if echelon.insert(&r) {
                kept.push(g.clone());
            }
        }
        idx = end;
    }
    Ok(kept)
}

/// Row echelon form over the monomial basis of one graded piece.
#[derive(Default)]
struct Echelon {
    rows: Vec<BTreeMap<(usize, Vec<u16>), Rational>>,
}

impl Echelon {
    fn vectorize(f: &FreeModuleElement) -> BTreeMap<(usize, Vec<u16>), Rational> {
        let mut v = BTreeMap::new();
        for (i, c) in f.components().iter().enumerate() {
            for (mon, k) in c.terms() {
                v.insert((i, mon.exponents().to_vec()), k.clone());
            }
        }
        v
    }

    /// Adds `f` if it is independent of the rows so far. Rows are kept
    /// sorted by pivot, so one ascending pass clears every pivot from `f`.
    fn insert(&mut self, f: &FreeModuleElement) -> bool {
        let mut v = Self::vectorize(f);
        for row in &self.rows {
            let (pivot, pc) = row.iter().next().expect("rows are nonzero");
            if let Some(c) = v.get(pivot).cloned() {
                let factor = &c / pc;
                for (k, x) in row {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e = &*e - &(&factor * x);
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        if v.is_empty() {
            return false;
        }
        let pos = self.rows.partition_point(|r| r.keys().next() < v.keys().next());
        self.rows.insert(pos, v);
        true
    }
}

/// Minimal graded free resolution of a homogeneous submodule.
pub fn minimal_free_resolution(m: &Submodule) -> Result<FreeResolution> {
    let nvars = m.nvars();
    let mut steps = Vec::new();
    let mut maps = Vec::new();
    let mut current = Submodule::new(m.ambient().clone(), minimal_generators(m)?)?;
    while !current.generators().is_empty() {
        if steps.len() > nvars + 1 {
            return Err(Error::invariant("resolution longer than the number of variables"));
        }
        let gens = current.generators().to_vec();
        let shifts: Vec<i32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
        steps.push(shifts);
        maps.push(gens);
        let syz = syzygies(&current)?;
        current = Submodule::new(syz.ambient().clone(), minimal_generators(&syz)?)?;
    }
    Ok(FreeResolution { nvars, steps, maps })
}

/// Minimal resolution of the quotient `(⊕ S(-s_i)) / M`: `F_0` is the ambient.
pub fn minimal_free_resolution_of_quotient(m: &Submodule) -> Result<FreeResolution> {
    let ambient = m.ambient().clone();
    let sub = minimal_free_resolution(m)?;
    let mut steps = vec![ambient.shifts.clone()];
    let mut maps = vec![(0..ambient.rank()).map(|i| ambient.unit(i)).collect::<Vec<_>>()];
    steps.extend(sub.steps);
    maps.extend(sub.maps);
    Ok(FreeResolution { nvars: m.nvars(), steps, maps })
}

/// Alternating sum `Σ_j (-1)^j Σ_e x^e / (1 - x)^n`, times `x^offset`.
pub fn series_from_resolution(r: &FreeResolution, n: u32, offset: i64) -> HilbertSeries {
    let mut num = LaurentPoly::zero();
    for (j, step) in r.steps.iter().enumerate() {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        for &e in step {
            num.add_term(e as i64 + offset, sign);
        }
    }
    HilbertSeries::new(num, n)
}

/// Betti numbers in displayed shifts: `steps[j][a]` is the multiplicity of
/// `S(a)` in the `j`-th free module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub steps: Vec<BTreeMap<i32, usize>>,
}

impl BettiTable {
    pub fn from_display(steps: &[&[(i32, usize)]]) -> Self {
        BettiTable { steps: steps.iter().map(|s| s.iter().copied().collect()).collect() }
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|step| {
                step.iter()
                    .rev()
                    .map(|(a, k)| if *k == 1 { format!("S({a})") } else { format!("S({a})^{k}") })
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        write!(f, "{}", parts.join(" <- "))
    }
}

/// Checks that consecutive maps of `r` compose to zero.
pub fn maps_compose_to_zero(r: &FreeResolution) -> bool {
    (1..r.len()).all(|j| {
        let target = r.maps[j - 1][0].ambient();
        r.maps[j].iter().all(|col| apply_map(&r.maps[j - 1], col, &target).is_zero())
    })
}

#[cfg(test)]
mod tests;

//! Multi-logarithmic differential forms `Ω^q(log X/C)`, their Hilbert
//! series, and the Ψ-polynomials of the log-form, Koszul and residue
//! families.
//!
//! A form `ω = α / h` with `α = Σ α_I dx_I` is stored through its numerator
//! `α ∈ S^{C(ℓ,q)}`, on the basis `dx_I` indexed by the increasing index
//! sets `I` in lexicographic order. All modules are computed at degree
//! offset 0; reported series carry the factor `x^{-d}`, `d = deg h`.

mod psi;

use num_integer::binomial;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::ci::CIData;
use crate::error::{Error, Result};
use crate::groebner::{preimage_kernel, FreeModule, FreeModuleElement, Ideal, KernelConstraint, Submodule};
use crate::poly::Poly;
use crate::resolution::{
    hilbert_series_of_submodule, minimal_free_resolution, BettiTable, HilbertSeries, LaurentPoly,
};

pub use psi::PsiPolynomial;

/// Increasing `q`-subsets of `0..ℓ` in lexicographic order.
pub fn exterior_basis(ell: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, ell: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=ell - left {
            cur.push(i);
            rec(i + 1, ell, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q <= ell {
        rec(0, ell, q, &mut Vec::new(), &mut out);
    }
    out
}

/// Images of the basis forms `dx_I` under `df ∧ ·`, in `Ω^{q+1}` with the
/// shifts that make the map homogeneous of degree 0.
///
/// `df ∧ dx_I = Σ_{j ∉ I} ∂_j f · (-1)^{#{i ∈ I : i < j}} dx_{I ∪ {j}}`.
pub fn wedge_images(f: &Poly, q: usize) -> Result<Vec<FreeModuleElement>> {
    let ell = f.nvars();
    if q >= ell {
        return Err(Error::input(format!("no {}-forms in {ell} variables", q + 1)));
    }
    let deg = f.homogeneous_degree().ok_or_else(|| Error::input(format!("{f} is not homogeneous")))? as i32;
    let source = exterior_basis(ell, q);
    let target = exterior_basis(ell, q + 1);
    let target_module = FreeModule::new(ell, vec![1 - deg; target.len()]);
    let df = f.differential();
    source
        .iter()
        .map(|idx| {
            let mut comps = vec![Poly::zero(ell); target.len()];
            for (j, dj) in df.iter().enumerate() {
                if idx.contains(&j) || dj.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < j).count();
                let mut joined = idx.clone();
                joined.insert(before, j);
                let pos = target.binary_search(&joined).expect("index set is in the basis");
                comps[pos] = if before % 2 == 0 { dj.clone() } else { -dj };
            }
            target_module.element(comps)
        })
        .collect()
}

fn check_compatible(a: &Arrangement, c: &CIData) -> Result<()> {
    if a.ambient_dim() != c.nvars() {
        return Err(Error::input(format!(
            "arrangement in {} variables but complete intersection in {}",
            a.ambient_dim(),
            c.nvars()
        )));
    }
    if let Some(k) = a.codim() {
        if k != c.codim() {
            return Err(Error::input(format!(
                "arrangement has codimension {k} but the complete intersection has {} generators",
                c.codim()
            )));
        }
    }
    Ok(())
}

/// Module `h·Ω^q(log X/C) ⊆ S^{C(ℓ,q)}`: the `α` with `f_i α ∈ I_C S^{C(ℓ,q)}`
/// and `df_i ∧ α ∈ I_C S^{C(ℓ,q+1)}` for the generators `f_i` of `I_X`.
pub fn logform_module(a: &Arrangement, c: &CIData, q: usize) -> Result<Submodule> {
    check_compatible(a, c)?;
    let ix = a.vanishing_ideal()?;
    logform_module_with(ix.generators(), c.ideal(), a.ambient_dim(), q)
}

fn logform_module_with(fs: &[Poly], ic: &Ideal, ell: usize, q: usize) -> Result<Submodule> {
    if q > ell {
        return Err(Error::input(format!("form degree {q} exceeds the dimension {ell}")));
    }
    let rank = binomial(ell, q);
    let ambient = FreeModule::new(ell, vec![0; rank]);
    let mut constraints = Vec::new();
    for f in fs {
        let deg = f.homogeneous_degree().ok_or_else(|| Error::input(format!("{f} is not homogeneous")))? as i32;
        let target = FreeModule::new(ell, vec![-deg; rank]);
        constraints.push(KernelConstraint::multiplier(&ambient, f, Submodule::ideal_times_free(ic, target))?);
        if q < ell && deg > 0 {
            let images = wedge_images(f, q)?;
            let target = images[0].ambient();
            constraints.push(KernelConstraint { images, quotient: Submodule::ideal_times_free(ic, target) });
        }
    }
    preimage_kernel(&ambient, &constraints)
}

/// `Ω^q(log X/C)` with its Hilbert series.
#[derive(Clone, Debug)]
pub struct LogFormModuleSeries {
    pub q: usize,
    /// the numerator module `h·Ω^q(log X/C)`
    pub module: Submodule,
    /// series of `Ω^q(log X/C)`, including the factor `x^{-d}`
    pub series: HilbertSeries,
}

impl LogFormModuleSeries {
    /// Betti table of a minimal resolution, with generator degrees reported
    /// as `d - e` so that `S(d - e)` is read in the grading of forms.
    pub fn betti_table(&self, d: u32) -> Result<BettiTable> {
        Ok(minimal_free_resolution(&self.module)?.betti_table(d as i32))
    }
}

pub fn logform_series(a: &Arrangement, c: &CIData, q: usize) -> Result<LogFormModuleSeries> {
    let module = logform_module(a, c, q)?;
    let series = hilbert_series_of_submodule(&module, -(c.total_degree() as i64))?;
    Ok(LogFormModuleSeries { q, module, series })
}

/// All `Ω^q(log X/C)` for `q = 0..ℓ`, computed in parallel.
pub fn logform_family(a: &Arrangement, c: &CIData) -> Result<Vec<LogFormModuleSeries>> {
    check_compatible(a, c)?;
    let ix = a.vanishing_ideal()?;
    let ell = a.ambient_dim();
    let offset = -(c.total_degree() as i64);
    (0..=ell)
        .into_par_iter()
        .map(|q| {
            let module = logform_module_with(ix.generators(), c.ideal(), ell, q)?;
            let series = hilbert_series_of_submodule(&module, offset)?;
            Ok(LogFormModuleSeries { q, module, series })
        })
        .collect()
}

/// `Poin((1/h) I_C Ω^q) = C(ℓ,q) x^{-d} (1 - ∏(1 - x^{d_i})) / (1 - x)^ℓ`.
pub fn koszul_series(c: &CIData, q: usize) -> HilbertSeries {
    let ell = c.nvars();
    if q > ell {
        return HilbertSeries::zero();
    }
    let prod = c
        .degrees()
        .iter()
        .fold(LaurentPoly::one(), |acc, &d| &acc * &(&LaurentPoly::one() - &LaurentPoly::monomial(d as i64, 1)));
    let num = (&LaurentPoly::one() - &prod).shift(-(c.total_degree() as i64)).scale(binomial(ell, q) as i64);
    HilbertSeries::new(num, ell as u32)
}

pub fn koszul_family(c: &CIData) -> Vec<HilbertSeries> {
    (0..=c.nvars()).map(|q| koszul_series(c, q)).collect()
}

/// `Ψ((1/h) I_C Ω•) = t^ℓ x^{-d} (1 - ∏(1 - x^{d_i}))`.
pub fn koszul_psi(c: &CIData) -> PsiPolynomial {
    let prod = c
        .degrees()
        .iter()
        .fold(LaurentPoly::one(), |acc, &d| &acc * &(&LaurentPoly::one() - &LaurentPoly::monomial(d as i64, 1)));
    let x_part = (&LaurentPoly::one() - &prod).shift(-(c.total_degree() as i64));
    &PsiPolynomial::t_pow(c.nvars()) * &PsiPolynomial::from_x(x_part)
}

/// `Σ_q Poin(M^q)(t(1 - x) - 1)^q` for series of modules over the ring in
/// `ell` variables. The numerator over `(1 - x)^ℓ` must be divisible by
/// `(1 - x)^ℓ`; otherwise an invariant violation is reported.
pub fn psi_of_series(series: &[HilbertSeries], ell: usize) -> Result<PsiPolynomial> {
    let e = ell as u32;
    let mut acc = PsiPolynomial::zero();
    let d = PsiPolynomial::d_factor();
    let mut d_pow = PsiPolynomial::t_pow(0);
    for (q, s) in series.iter().enumerate() {
        if q > 0 {
            d_pow = &d_pow * &d;
        }
        if s.denominator_exp() > e {
            return Err(Error::invariant(format!(
                "series of degree-{q} module has a pole of order {} > {ell}",
                s.denominator_exp()
            )));
        }
        acc = &acc + &(&PsiPolynomial::from_x(s.numerator_over(e)) * &d_pow);
    }
    let mut coeffs = Vec::with_capacity(acc.t_coeffs().len());
    for (a, c) in acc.t_coeffs().iter().enumerate() {
        let mut c = c.clone();
        for _ in 0..e {
            c = c.div_one_minus_x().ok_or_else(|| {
                Error::invariant(format!(
                    "Ψ numerator is not divisible by (1 - x)^{ell} (coefficient of t^{a})"
                ))
            })?;
        }
        coeffs.push(c);
    }
    Ok(PsiPolynomial::new(coeffs))
}

/// Number of leading coefficients checked for non-negativity in residue
/// series.
const RESIDUE_CHECK_TERMS: i64 = 9;

/// All Ψ-polynomials attached to `X ⊆ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiData {
    /// `Ψ(Ω•(log X/C))`
    pub log_forms: PsiPolynomial,
    /// `Ψ((1/h) I_C Ω•)`
    pub koszul: PsiPolynomial,
    /// `Ψ(R_X•)`
    pub residue: PsiPolynomial,
    /// `Ψ̃(X)`
    pub tilde: PsiPolynomial,
    /// `Poin(R^r_X)` for `r = 0..ℓ-k`
    pub residue_series: Vec<HilbertSeries>,
}

/// Assembles [`PsiData`] from the log-form series `Poin(Ω^q(log X/C))`,
/// `q = 0..ℓ`, checking every identity relating them.
pub fn psi_data_from_series(log_series: &[HilbertSeries], c: &CIData) -> Result<PsiData> {
    let ell = c.nvars();
    let k = c.codim();
    if log_series.len() != ell + 1 {
        return Err(Error::input(format!("expected {} series, got {}", ell + 1, log_series.len())));
    }
    let koszul_series = koszul_family(c);
    for q in 0..k.min(ell + 1) {
        if log_series[q] != koszul_series[q] {
            return Err(Error::invariant(format!(
                "Ω^{q}(log X/C) differs from (1/h) I_C Ω^{q} although {q} < k = {k}"
            )));
        }
    }
    let residue_series: Vec<HilbertSeries> = (k..=ell)
        .map(|q| (&log_series[q] - &koszul_series[q]).shift(k as i64))
        .collect();
    for (r, s) in residue_series.iter().enumerate() {
        if let Some(low) = s.numerator().min_exp() {
            if let Some(p) = (low..low + RESIDUE_CHECK_TERMS).find(|&p| s.coefficient(p) < 0) {
                return Err(Error::invariant(format!(
                    "residue series R^{r} has a negative coefficient at x^{p}"
                )));
            }
        }
    }

    let log_forms = psi_of_series(log_series, ell)?;
    let koszul = psi_of_series(&koszul_series, ell)?;
    if koszul != koszul_psi(c) {
        return Err(Error::invariant("Koszul Ψ differs from its closed form"));
    }
    let d_k = PsiPolynomial::d_factor().pow(k as u32);
    let by_division = (&log_forms - &koszul).shift_x(k as i64).div_exact(&d_k).ok_or_else(|| {
        Error::invariant(format!("Ψ(Ω•) - Ψ(Koszul) is not divisible by (t(1 - x) - 1)^{k}"))
    })?;
    let by_series = psi_of_series(&residue_series, ell)?;
    if by_division != by_series {
        return Err(Error::invariant(format!(
            "residue Ψ differs between routes: {by_division} by division, {by_series} from residue series"
        )));
    }
    let correction = (&d_k * &by_division).shift_x(-(k as i64));
    let tilde = if k % 2 == 1 { &koszul + &correction } else { &koszul - &correction };
    Ok(PsiData { log_forms, koszul, residue: by_division, tilde, residue_series })
}

/// Computes every log-form module of `X ⊆ C` and the resulting Ψ-data.
pub fn compute_psi(a: &Arrangement, c: &CIData) -> Result<PsiData> {
    let family = logform_family(a, c)?;
    let series: Vec<HilbertSeries> = family.into_iter().map(|m| m.series).collect();
    psi_data_from_series(&series, c)
}

/// `Ψ(R_X•)`.
pub fn residue_psi(a: &Arrangement, c: &CIData) -> Result<PsiPolynomial> {
    Ok(compute_psi(a, c)?.residue)
}

/// `Ψ̃(X) = Ψ((1/h) I_C Ω•) + (-1)^{k+1} (t(1-x) - 1)^k x^{-k} Ψ(R_X•)`.
pub fn psi_tilde(a: &Arrangement, c: &CIData) -> Result<PsiPolynomial> {
    Ok(compute_psi(a, c)?.tilde)
}

//! Reduced complete intersections `C ⊇ X` of the same codimension as `X`.
//!
//! A complete intersection is given by homogeneous `h_1, …, h_k`. In the
//! grid form every `h_j` is a product of linear forms `α_{i,j}` and the
//! components of `C` are the intersections `H_{i_1,1} ∩ … ∩ H_{i_k,k}`.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::linalg::Row;
use crate::arrangement::{Arrangement, LinearSubspace};
use crate::error::{Error, Result};
use crate::groebner::{intersect_all, Ideal};
use crate::poly::{parse_factors, Poly, Rational, VariableNames};
use crate::resolution::hilbert_series_of_quotient_ring;

/// Attempts per hyperplane before the coefficient bound is doubled.
const ATTEMPTS_PER_BOUND: usize = 64;
/// Number of times the coefficient bound may be doubled.
const BOUND_DOUBLINGS: usize = 6;

/// A complete intersection `C`, with its generators and its components.
#[derive(Clone, Debug)]
pub struct CIData {
    nvars: usize,
    generators: Vec<Poly>,
    /// `grid[j]` lists the linear factors of `h_j`
    grid: Option<Vec<Vec<Poly>>>,
    components: Vec<LinearSubspace>,
    ideal: Ideal,
}

impl CIData {
    /// Grid form: `h_j` is the product of `factors[j]`.
    pub fn from_factors(nvars: usize, factors: Vec<Vec<Poly>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::input("a complete intersection needs at least one generator"));
        }
        let mut columns = Vec::with_capacity(factors.len());
        for (j, col) in factors.iter().enumerate() {
            if col.is_empty() {
                return Err(Error::input(format!("generator {} has no factors", j + 1)));
            }
            let mut rows = Vec::with_capacity(col.len());
            for f in col {
                if f.nvars() != nvars {
                    return Err(Error::input(format!("factor {f} lives in the wrong ring")));
                }
                rows.push(f.as_linear_form().ok_or_else(|| {
                    Error::input(format!("factor {f} of generator {} is not a linear form", j + 1))
                })?);
            }
            columns.push(rows);
        }
        let generators: Vec<Poly> = factors
            .iter()
            .map(|col| col.iter().fold(Poly::one(nvars), |acc, f| &acc * f))
            .collect();
        let components = grid_components(nvars, &columns)?;
        let ideal = Ideal::new(nvars, generators.clone())?;
        Ok(CIData { nvars, generators, grid: Some(factors), components, ideal })
    }

    /// Arbitrary generators together with the claimed components of `C`.
    pub fn from_generators(generators: Vec<Poly>, components: Vec<LinearSubspace>) -> Result<Self> {
        let nvars = generators
            .first()
            .map(Poly::nvars)
            .ok_or_else(|| Error::input("a complete intersection needs at least one generator"))?;
        if let Some(c) = components.iter().find(|c| c.ambient_dim() != nvars) {
            return Err(Error::input(format!("component {c} lives in the wrong space")));
        }
        let ideal = Ideal::new(nvars, generators.clone())?;
        Ok(CIData { nvars, generators, grid: None, components, ideal })
    }

    /// Generators written as text. Products of linear forms give the grid
    /// form; otherwise `components` must be supplied.
    pub fn parse(
        generators: &[&str],
        names: &VariableNames,
        components: Option<Vec<LinearSubspace>>,
    ) -> Result<Self> {
        let factors = generators.iter().map(|g| parse_factors(g, names)).collect::<Result<Vec<_>>>()?;
        if let Some(components) = components {
            let gens = factors
                .iter()
                .map(|fs| fs.iter().fold(Poly::one(names.len()), |acc, f| &acc * f))
                .collect();
            return Self::from_generators(gens, components);
        }
        if factors.iter().flatten().all(|f| f.as_linear_form().is_some()) {
            Self::from_factors(names.len(), factors)
        } else {
            Err(Error::input(
                "generators are not products of linear forms; list the components of C explicitly",
            ))
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of generators `k`.
    pub fn codim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn grid(&self) -> Option<&[Vec<Poly>]> {
        self.grid.as_deref()
    }

    /// Components of `C`, one per grid index tuple in the grid form.
    pub fn components(&self) -> &[LinearSubspace] {
        &self.components
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Degrees `d_j` of the generators.
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|h| h.degree().unwrap_or(0)).collect()
    }

    /// `d = Σ d_j`.
    pub fn total_degree(&self) -> u32 {
        self.degrees().iter().sum()
    }

    /// Components of `C` that are not components of `a`.
    pub fn residual_components(&self, a: &Arrangement) -> Vec<LinearSubspace> {
        let ours: BTreeSet<&LinearSubspace> = a.components().iter().collect();
        let mut seen = BTreeSet::new();
        self.components
            .iter()
            .filter(|c| !ours.contains(c) && seen.insert(*c))
            .cloned()
            .collect()
    }

    pub fn display_with<'a>(&'a self, names: &'a VariableNames) -> impl fmt::Display + 'a {
        DisplayCi { ci: self, names }
    }
}

struct DisplayCi<'a> {
    ci: &'a CIData,
    names: &'a VariableNames,
}

impl fmt::Display for DisplayCi<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, h) in self.ci.generators.iter().enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            write!(f, "h{} = ", j + 1)?;
            match &self.ci.grid {
                Some(grid) => {
                    let fs: Vec<String> =
                        grid[j].iter().map(|a| format!("({})", a.display_with(self.names))).collect();
                    write!(f, "{}", fs.join("*"))?;
                }
                None => write!(f, "{}", h.display_with(self.names))?,
            }
        }
        Ok(())
    }
}

/// All intersections `H_{i_1,1} ∩ … ∩ H_{i_k,k}`, in lexicographic order of
/// the index tuples.
fn grid_components(nvars: usize, columns: &[Vec<Row>]) -> Result<Vec<LinearSubspace>> {
    let mut out = vec![LinearSubspace::whole(nvars)];
    for col in columns {
        let mut next = Vec::with_capacity(out.len() * col.len());
        for partial in &out {
            for row in col {
                next.push(partial.intersect(&LinearSubspace::from_forms(nvars, std::slice::from_ref(row))?));
            }
        }
        out = next;
    }
    Ok(out)
}

/// One of the checks performed by [`verify_ci`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiCondition {
    /// The number of generators equals the codimension of `X`.
    GeneratorCount,
    /// Every component of `C` has codimension `k`.
    Dimension,
    /// Every `h_j` lies in `I_X`.
    Containment,
    /// The components of `C` are pairwise distinct.
    Distinct,
    /// `codim ⟨h_1, …, h_j⟩ = j` for every `j`.
    RegularSequence,
    /// `⟨h_1, …, h_k⟩` equals the intersection of the component ideals.
    Radical,
}

impl fmt::Display for CiCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CiCondition::GeneratorCount => "generator count",
            CiCondition::Dimension => "component dimension",
            CiCondition::Containment => "X contained in C",
            CiCondition::Distinct => "distinct components",
            CiCondition::RegularSequence => "regular sequence",
            CiCondition::Radical => "radical ideal",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiCheck {
    pub condition: CiCondition,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_ci`], one entry per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiReport {
    pub checks: Vec<CiCheck>,
}

impl CiReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, condition: CiCondition) -> Option<&CiCheck> {
        self.checks.iter().find(|c| c.condition == condition)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.condition, c.detail)).collect()
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::CiRejected(self.failures()))
        }
    }
}

impl fmt::Display for CiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.condition, c.detail)?;
        }
        Ok(())
    }
}

/// Checks that `c` is a reduced complete intersection of the codimension
/// of `a` containing `a`.
pub fn verify_ci(a: &Arrangement, c: &CIData) -> Result<CiReport> {
    if c.nvars != a.ambient_dim() {
        return Err(Error::input(format!(
            "complete intersection lives in {} variables, arrangement in {}",
            c.nvars,
            a.ambient_dim()
        )));
    }
    let k = c.codim();
    let mut checks = Vec::new();

    let expected = a.codim();
    checks.push(match expected {
        Some(e) if e != k => CiCheck {
            condition: CiCondition::GeneratorCount,
            passed: false,
            detail: format!("{k} generators for an arrangement of codimension {e}"),
        },
        _ if !a.is_equidimensional() => CiCheck {
            condition: CiCondition::GeneratorCount,
            passed: false,
            detail: "arrangement is not equidimensional".into(),
        },
        _ => CiCheck { condition: CiCondition::GeneratorCount, passed: true, detail: format!("k = {k}") },
    });

    let bad_dims: Vec<String> =
        c.components.iter().filter(|s| s.codim() != k).map(|s| s.to_string()).collect();
    checks.push(CiCheck {
        condition: CiCondition::Dimension,
        passed: bad_dims.is_empty() && !c.components.is_empty(),
        detail: if c.components.is_empty() {
            "no components".into()
        } else if bad_dims.is_empty() {
            format!("all {} components have dimension {}", c.components.len(), c.nvars - k)
        } else {
            format!("components of the wrong dimension: {}", bad_dims.join(", "))
        },
    });

    let ix = a.vanishing_ideal()?;
    let mut outside = Vec::new();
    for (j, h) in c.generators.iter().enumerate() {
        if !ix.contains(h)? {
            outside.push(format!("h{}", j + 1));
        }
    }
    checks.push(CiCheck {
        condition: CiCondition::Containment,
        passed: outside.is_empty(),
        detail: if outside.is_empty() {
            "every generator vanishes on X".into()
        } else {
            format!("not in I_X: {}", outside.join(", "))
        },
    });

    let mut seen = BTreeSet::new();
    let dups: BTreeSet<String> =
        c.components.iter().filter(|s| !seen.insert(*s)).map(|s| s.to_string()).collect();
    checks.push(CiCheck {
        condition: CiCondition::Distinct,
        passed: dups.is_empty(),
        detail: if dups.is_empty() {
            "components pairwise distinct".into()
        } else {
            format!("repeated components: {}", dups.into_iter().collect::<Vec<_>>().join(", "))
        },
    });

    let mut regular = CiCheck {
        condition: CiCondition::RegularSequence,
        passed: true,
        detail: "codimension grows by one with each generator".into(),
    };
    if let Some(h) = c.generators.iter().find(|h| h.is_zero() || !h.is_homogeneous()) {
        regular.passed = false;
        regular.detail = format!("{h} is zero or not homogeneous");
    } else {
        for j in 1..=k {
            let partial = Ideal::new(c.nvars, c.generators[..j].to_vec())?;
            let dim = hilbert_series_of_quotient_ring(&partial).dimension() as usize;
            let codim = c.nvars - dim;
            if codim != j {
                regular.passed = false;
                regular.detail = format!("⟨h1..h{j}⟩ has codimension {codim}, expected {j}");
                break;
            }
        }
    }
    checks.push(regular);

    let distinct: Vec<Ideal> = seen.into_iter().map(LinearSubspace::ideal).collect();
    let radical = if distinct.is_empty() {
        CiCheck { condition: CiCondition::Radical, passed: false, detail: "no components".into() }
    } else {
        let inter = intersect_all(c.nvars, &distinct)?;
        let ok = inter.contains_ideal(&c.ideal)? && c.ideal.contains_ideal(&inter)?;
        CiCheck {
            condition: CiCondition::Radical,
            passed: ok,
            detail: if ok {
                "ideal equals the intersection of the component ideals".into()
            } else {
                "ideal differs from the intersection of the component ideals".into()
            },
        }
    };
    checks.push(radical);

    Ok(CiReport { checks })
}

/// Random primitive integer form in the row space of `forms`.
fn random_form(forms: &[Row], bound: i64, rng: &mut ChaCha8Rng) -> Option<Row> {
    let ncols = forms.first()?.len();
    let coeffs: Vec<i64> = forms.iter().map(|_| rng.gen_range(-bound..=bound)).collect();
    if coeffs.iter().all(|&c| c == 0) {
        return None;
    }
    let mut row = vec![Rational::zero(); ncols];
    for (c, f) in coeffs.iter().zip(forms) {
        let c = Rational::from_int(*c);
        for (r, x) in row.iter_mut().zip(f) {
            *r = &*r + &(&c * x);
        }
    }
    Poly::linear_form(&row).primitive().as_linear_form()
}

/// Every intersection of at most `k` of the given hyperplanes.
fn small_intersections(nvars: usize, hyperplanes: &[Row], k: usize) -> Vec<LinearSubspace> {
    let mut out: BTreeSet<LinearSubspace> = BTreeSet::new();
    let mut frontier: Vec<(usize, LinearSubspace)> = vec![(0, LinearSubspace::whole(nvars))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, s) in &frontier {
            for (i, h) in hyperplanes.iter().enumerate().skip(*start) {
                let hs = LinearSubspace::from_forms(nvars, std::slice::from_ref(h)).expect("form has the ambient length");
                let inter = s.intersect(&hs);
                out.insert(inter.clone());
                next.push((i + 1, inter));
            }
        }
        frontier = next;
    }
    out.into_iter().collect()
}

/// Generic grid construction: `α_{i,j}` is a random form vanishing on `X_i`
/// such that no other component lies on it and no intersection of at most
/// `k` earlier hyperplanes lies on it.
pub fn build_generic_ci(a: &Arrangement, seed: u64, coeff_bound: u64) -> Result<CIData> {
    let k = a.codim().ok_or_else(|| {
        Error::input("a generic complete intersection needs a non-empty equidimensional arrangement")
    })?;
    let n = a.ambient_dim();
    let s = a.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<Row> = Vec::with_capacity(s * k);
    let mut grid: Vec<Vec<Row>> = vec![Vec::with_capacity(s); k];
    let mut bound = coeff_bound.clamp(1, i64::MAX as u64) as i64;

    for i in 0..s {
        #[allow(clippy::needless_range_loop)]
        for j in 0..k {
            let forbidden = small_intersections(n, &chosen, k);
            let mut found = None;
            'search: for _ in 0..=BOUND_DOUBLINGS {
                for _ in 0..ATTEMPTS_PER_BOUND {
                    let Some(form) = random_form(a.components()[i].forms(), bound, &mut rng) else {
                        continue;
                    };
                    let others_ok = a
                        .components()
                        .iter()
                        .enumerate()
                        .all(|(m, x)| m == i || !x.lies_in_hyperplane(&form));
                    if others_ok && forbidden.iter().all(|f| !f.lies_in_hyperplane(&form)) {
                        found = Some(form);
                        break 'search;
                    }
                }
                bound = bound.saturating_mul(2);
            }
            let form = found.ok_or_else(|| {
                Error::Construction(format!(
                    "no admissible hyperplane through component {} (column {}) with coefficients up to {bound}",
                    i + 1,
                    j + 1
                ))
            })?;
            chosen.push(form.clone());
            grid[j].push(form);
        }
    }

    let factors = grid.iter().map(|col| col.iter().map(|r| Poly::linear_form(r)).collect()).collect();
    let ci = CIData::from_factors(n, factors)?;
    let report = verify_ci(a, &ci)?;
    if !report.passed() {
        return Err(Error::Construction(format!(
            "constructed grid failed verification: {}",
            report.failures().join("; ")
        )));
    }
    Ok(ci)
}

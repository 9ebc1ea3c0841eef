//! Gröbner bases of ideals and of graded submodules of shifted free modules.

mod engine;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, MAX_VARS};

pub(crate) use engine::ModuleOrder;
use engine::{make_vector, Buchberger, Vector};

/// Ideal of the polynomial ring, with a lazily computed degrevlex basis.
#[derive(Clone)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.generators).finish()
    }
}

fn ideal_order() -> ModuleOrder {
    ModuleOrder::new(MonomialOrder::DegRevLex, vec![0])
}

fn poly_to_vector(order: &ModuleOrder, f: &Poly, comp: usize) -> Vector {
    make_vector(order, f.terms().iter().map(|(m, c)| (comp, *m, c.clone())))
}

fn vector_to_poly(nvars: usize, v: &Vector) -> Poly {
    Poly::from_terms(nvars, v.iter().map(|t| (t.mon, t.coeff.clone())))
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::input(format!("at most {MAX_VARS} variables supported")));
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::input(format!(
                "generator {g} lives in {} variables, expected {nvars}",
                g.nvars()
            )));
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { nvars, generators, gb: OnceLock::new() })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, generators: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal { nvars, generators: vec![Poly::one(nvars)], gb: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Poly::is_homogeneous)
    }

    /// Reduced degrevlex Gröbner basis, monic, sorted by descending leading term.
    pub fn groebner_basis(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner_basis(self, MonomialOrder::DegRevLex))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(Poly::is_constant)
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Ideal) -> bool {
        self.nvars == other.nvars && self.groebner_basis() == other.groebner_basis()
    }

    /// Leading monomials of the degrevlex basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis().iter().filter_map(|g| g.leading().map(|(m, _)| *m)).collect()
    }
}

/// Reduced Gröbner basis of `ideal` for `ord`, monic, sorted by descending
/// leading term.
pub fn groebner_basis(ideal: &Ideal, ord: MonomialOrder) -> Vec<Poly> {
    let order = ModuleOrder::new(ord, vec![0]);
    let inputs = ideal.generators.iter().map(|g| poly_to_vector(&order, g, 0)).collect();
    Buchberger::new(&order)
        .run(inputs)
        .iter()
        .map(|v| vector_to_poly(ideal.nvars, v))
        .collect()
}

/// Remainder of `f` on division by the degrevlex basis of `ideal`.
pub fn normal_form(f: &Poly, ideal: &Ideal) -> Result<Poly> {
    if f.nvars() != ideal.nvars {
        return Err(Error::input("polynomial and ideal live in different rings"));
    }
    let order = ideal_order();
    let basis = ideal.groebner_basis().iter().map(|g| poly_to_vector(&order, g, 0)).collect();
    let b = Buchberger::from_basis(&order, basis);
    Ok(vector_to_poly(ideal.nvars, &b.reduce(poly_to_vector(&order, f, 0))))
}

/// `I ∩ J`, by eliminating `t` from `t·I + (1 − t)·J`.
pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let n = i.nvars;
    if j.nvars != n {
        return Err(Error::input("ideals live in different rings"));
    }
    if n + 1 > MAX_VARS {
        return Err(Error::input(format!(
            "intersection needs an auxiliary variable; at most {} ring variables supported",
            MAX_VARS - 1
        )));
    }
    if i.generators.is_empty() || j.generators.is_empty() {
        return Ok(Ideal::zero(n));
    }
    let t = Poly::var(n + 1, 0);
    let one_minus_t = &Poly::one(n + 1) - &t;
    let gens: Vec<Poly> = i
        .generators
        .iter()
        .map(|f| &t * &f.prepend_vars(1))
        .chain(j.generators.iter().map(|g| &one_minus_t * &g.prepend_vars(1)))
        .collect();
    let big = Ideal::new(n + 1, gens)?;
    let gb = groebner_basis(&big, MonomialOrder::Elimination { first_block: 1 });
    let kept = gb.iter().filter_map(|g| g.drop_leading_vars(1)).collect();
    let out = Ideal::new(n, kept)?;
    Ok(out)
}

/// Intersection of a list of ideals; the empty list gives the unit ideal.
pub fn intersect_all(nvars: usize, ideals: &[Ideal]) -> Result<Ideal> {
    let mut acc = Ideal::unit(nvars);
    for (k, i) in ideals.iter().enumerate() {
        acc = if k == 0 { i.clone() } else { ideal_intersect(&acc, i)? };
    }
    Ok(acc)
}

/// Graded free module `S(-s_1) ⊕ ... ⊕ S(-s_r)`, given by the generator
/// degrees `s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    pub nvars: usize,
    pub shifts: Vec<i32>,
}

impl FreeModule {
    pub fn new(nvars: usize, shifts: Vec<i32>) -> Self {
        FreeModule { nvars, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn unit(&self, i: usize) -> FreeModuleElement {
        let mut components = vec![Poly::zero(self.nvars); self.rank()];
        components[i] = Poly::one(self.nvars);
        FreeModuleElement { nvars: self.nvars, components, shifts: self.shifts.clone() }
    }

    pub fn zero(&self) -> FreeModuleElement {
        FreeModuleElement {
            nvars: self.nvars,
            components: vec![Poly::zero(self.nvars); self.rank()],
            shifts: self.shifts.clone(),
        }
    }

    pub fn element(&self, components: Vec<Poly>) -> Result<FreeModuleElement> {
        FreeModuleElement::new(self.nvars, components, self.shifts.clone())
    }

    pub(crate) fn order(&self) -> ModuleOrder {
        ModuleOrder::new(MonomialOrder::DegRevLex, self.shifts.clone())
    }
}

/// Element of a shifted free module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeModuleElement {
    nvars: usize,
    components: Vec<Poly>,
    shifts: Vec<i32>,
}

impl fmt::Debug for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

impl FreeModuleElement {
    pub fn new(nvars: usize, components: Vec<Poly>, shifts: Vec<i32>) -> Result<Self> {
        if components.len() != shifts.len() {
            return Err(Error::input(format!(
                "{} components but {} shifts",
                components.len(),
                shifts.len()
            )));
        }
        if components.iter().any(|c| c.nvars() != nvars) {
            return Err(Error::input("components live in different rings"));
        }
        Ok(FreeModuleElement { nvars, components, shifts })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn ambient(&self) -> FreeModule {
        FreeModule::new(self.nvars, self.shifts.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Degree `deg(c_i) + s_i`, if it is the same for every term.
    pub fn degree(&self) -> Option<i32> {
        let mut deg = None;
        for (c, s) in self.components.iter().zip(&self.shifts) {
            for (m, _) in c.terms() {
                let d = m.degree() as i32 + s;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn scale(&self, f: &Poly) -> FreeModuleElement {
        FreeModuleElement {
            nvars: self.nvars,
            components: self.components.iter().map(|c| c * f).collect(),
            shifts: self.shifts.clone(),
        }
    }

    pub fn add(&self, other: &FreeModuleElement) -> FreeModuleElement {
        assert_eq!(self.shifts, other.shifts, "elements of different free modules");
        FreeModuleElement {
            nvars: self.nvars,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
            shifts: self.shifts.clone(),
        }
    }

    pub fn sub(&self, other: &FreeModuleElement) -> FreeModuleElement {
        self.add(&other.scale(&Poly::constant(self.nvars, Rational::from_int(-1))))
    }

    fn to_vector(&self, order: &ModuleOrder, offset: usize) -> Vector {
        make_vector(
            order,
            self.components
                .iter()
                .enumerate()
                .flat_map(|(i, c)| c.terms().iter().map(move |(m, k)| (i + offset, *m, k.clone()))),
        )
    }

    fn from_vector(ambient: &FreeModule, v: &Vector, offset: usize) -> FreeModuleElement {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); ambient.rank()];
        for t in v {
            buckets[t.comp as usize - offset].push((t.mon, t.coeff.clone()));
        }
        FreeModuleElement {
            nvars: ambient.nvars,
            components: buckets.into_iter().map(|b| Poly::from_terms(ambient.nvars, b)).collect(),
            shifts: ambient.shifts.clone(),
        }
    }

    /// Leading position and monomial under the shifted TOP order.
    pub fn leading_term(&self) -> Option<(usize, Monomial)> {
        let order = self.ambient().order();
        self.to_vector(&order, 0).first().map(|t| (t.comp as usize, t.mon))
    }
}

/// Submodule of a shifted free module, with a lazily computed reduced basis.
#[derive(Clone)]
pub struct Submodule {
    ambient: FreeModule,
    generators: Vec<FreeModuleElement>,
    gb: OnceLock<Vec<FreeModuleElement>>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule")
            .field("shifts", &self.ambient.shifts)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Submodule {
    /// Zero generators are dropped.
    pub fn new(ambient: FreeModule, generators: Vec<FreeModuleElement>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.shifts != ambient.shifts || g.nvars != ambient.nvars) {
            return Err(Error::input(format!("generator {g:?} is not in the ambient module")));
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Submodule { ambient, generators, gb: OnceLock::new() })
    }

    /// The whole free module.
    pub fn full(ambient: FreeModule) -> Self {
        let generators = (0..ambient.rank()).map(|i| ambient.unit(i)).collect();
        Submodule { ambient, generators, gb: OnceLock::new() }
    }

    /// `I · S^r`.
    pub fn ideal_times_free(ideal: &Ideal, ambient: FreeModule) -> Self {
        let generators = (0..ambient.rank())
            .flat_map(|i| {
                let e = ambient.unit(i);
                ideal.generators().iter().map(move |g| e.scale(g)).collect::<Vec<_>>()
            })
            .collect();
        Submodule { ambient, generators, gb: OnceLock::new() }
    }

    fn with_basis(ambient: FreeModule, basis: Vec<FreeModuleElement>) -> Self {
        let gb = OnceLock::new();
        let _ = gb.set(basis.clone());
        Submodule { ambient, generators: basis, gb }
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(FreeModuleElement::is_homogeneous)
    }

    /// Reduced Gröbner basis for the shifted TOP degrevlex order.
    pub fn groebner_basis(&self) -> &[FreeModuleElement] {
        self.gb.get_or_init(|| {
            let order = self.ambient.order();
            let inputs = self.generators.iter().map(|g| g.to_vector(&order, 0)).collect();
            Buchberger::new(&order)
                .run(inputs)
                .iter()
                .map(|v| FreeModuleElement::from_vector(&self.ambient, v, 0))
                .collect()
        })
    }

    pub fn normal_form(&self, f: &FreeModuleElement) -> Result<FreeModuleElement> {
        if f.shifts != self.ambient.shifts || f.nvars != self.ambient.nvars {
            return Err(Error::input("element is not in the ambient module"));
        }
        let order = self.ambient.order();
        let basis = self.groebner_basis().iter().map(|g| g.to_vector(&order, 0)).collect();
        let b = Buchberger::from_basis(&order, basis);
        Ok(FreeModuleElement::from_vector(&self.ambient, &b.reduce(f.to_vector(&order, 0)), 0))
    }

    pub fn contains(&self, f: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.groebner_basis() == other.groebner_basis()
    }

    /// Leading (position, monomial) pairs of the reduced basis.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.groebner_basis().iter().filter_map(FreeModuleElement::leading_term).collect()
    }
}

/// One condition `φ(α) ∈ Q` of a kernel computation. `images[j]` is `φ(e_j)`
/// and `quotient` is the submodule `Q` of the target.
#[derive(Clone, Debug)]
pub struct KernelConstraint {
    pub images: Vec<FreeModuleElement>,
    pub quotient: Submodule,
}

impl KernelConstraint {
    /// The condition `f·α ∈ Q` for a submodule `Q` of an `S^r` whose shifts
    /// are those of the source lowered by `deg f`.
    pub fn multiplier(source: &FreeModule, f: &Poly, quotient: Submodule) -> Result<Self> {
        if quotient.rank() != source.rank() {
            return Err(Error::input("multiplier constraint needs a target of the same rank"));
        }
        let target = quotient.ambient.clone();
        let images = (0..source.rank())
            .map(|j| {
                let mut comps = vec![Poly::zero(source.nvars); source.rank()];
                comps[j] = f.clone();
                target.element(comps)
            })
            .collect::<Result<_>>()?;
        Ok(KernelConstraint { images, quotient })
    }
}

/// `{α ∈ F : φ_i(α) ∈ Q_i for all constraints}`, with its reduced basis.
///
/// Computed from one basis of the stacked module `T_1 ⊕ ... ⊕ T_c ⊕ F`,
/// generated by `(φ(e_j), e_j)` and `(q, 0)`, under an order eliminating the
/// target block.
pub fn preimage_kernel(ambient: &FreeModule, constraints: &[KernelConstraint]) -> Result<Submodule> {
    if constraints.is_empty() {
        return Ok(Submodule::full(ambient.clone()));
    }
    let mut shifts = Vec::new();
    let mut offsets = Vec::new();
    for c in constraints {
        if c.images.len() != ambient.rank() {
            return Err(Error::input(format!(
                "constraint gives {} images for a module of rank {}",
                c.images.len(),
                ambient.rank()
            )));
        }
        if c.quotient.nvars() != ambient.nvars {
            return Err(Error::input("constraint lives in a different ring"));
        }
        for (j, img) in c.images.iter().enumerate() {
            if img.shifts != c.quotient.ambient.shifts {
                return Err(Error::input("constraint image is not in the quotient's ambient"));
            }
            if !img.is_zero() && img.degree() != Some(ambient.shifts[j]) {
                return Err(Error::input(format!(
                    "inhomogeneous constraint: image of basis vector {j} has degree {:?}, expected {}",
                    img.degree(),
                    ambient.shifts[j]
                )));
            }
        }
        if !c.quotient.is_homogeneous() {
            return Err(Error::input("inhomogeneous quotient generators"));
        }
        offsets.push(shifts.len());
        shifts.extend_from_slice(&c.quotient.ambient.shifts);
    }
    let elim = shifts.len();
    shifts.extend_from_slice(&ambient.shifts);
    let order = ModuleOrder { term: MonomialOrder::DegRevLex, shifts, elim };

    let mut inputs: Vec<Vector> = Vec::new();
    for j in 0..ambient.rank() {
        let mut v: Vec<(usize, Monomial, Rational)> =
            vec![(elim + j, Monomial::one(ambient.nvars), Rational::one())];
        for (c, &off) in constraints.iter().zip(&offsets) {
            for (i, comp) in c.images[j].components.iter().enumerate() {
                v.extend(comp.terms().iter().map(|(m, k)| (off + i, *m, k.clone())));
            }
        }
        inputs.push(make_vector(&order, v));
    }
    for (c, &off) in constraints.iter().zip(&offsets) {
        for g in &c.quotient.generators {
            inputs.push(g.to_vector(&order, off));
        }
    }
    let basis = Buchberger::new(&order).run(inputs);
    let kernel: Vec<FreeModuleElement> = basis
        .iter()
        .filter(|v| v[0].comp as usize >= elim)
        .map(|v| FreeModuleElement::from_vector(ambient, v, elim))
        .collect();
    Ok(Submodule::with_basis(ambient.clone(), kernel))
}

/// First syzygy module of the generators of `m`, in `S^g` with shifts equal
/// to the generator degrees.
pub fn syzygies(m: &Submodule) -> Result<Submodule> {
    let gens = &m.generators;
    let nvars = m.nvars();
    let gen_shifts: Vec<i32> = gens
        .iter()
        .map(|g| {
            g.degree().unwrap_or_else(|| {
                // inhomogeneous: any shift gives a valid module order
                g.components
                    .iter()
                    .zip(&g.shifts)
                    .filter_map(|(c, s)| c.degree().map(|d| d as i32 + s))
                    .max()
                    .unwrap_or(0)
            })
        })
        .collect();
    let source = FreeModule::new(nvars, gen_shifts);
    let images = gens.clone();
    let quotient = Submodule::new(m.ambient.clone(), Vec::new())?;
    if !m.is_homogeneous() {
        return syzygies_inhomogeneous(&source, &images, &m.ambient);
    }
    preimage_kernel(&source, &[KernelConstraint { images, quotient }])
}

fn syzygies_inhomogeneous(
    source: &FreeModule,
    images: &[FreeModuleElement],
    target: &FreeModule,
) -> Result<Submodule> {
    let elim = target.rank();
    let mut shifts = target.shifts.clone();
    shifts.extend_from_slice(&source.shifts);
    let order = ModuleOrder { term: MonomialOrder::DegRevLex, shifts, elim };
    let inputs: Vec<Vector> = images
        .iter()
        .enumerate()
        .map(|(j, img)| {
            let mut v = img.to_vector(&order, 0);
            v.extend(make_vector(&order, [(elim + j, Monomial::one(source.nvars), Rational::one())]));
            make_vector(&order, v.into_iter().map(|t| (t.comp as usize, t.mon, t.coeff)))
        })
        .collect();
    let basis = Buchberger::new(&order).run(inputs);
    let kernel = basis
        .iter()
        .filter(|v| v[0].comp as usize >= elim)
        .map(|v| FreeModuleElement::from_vector(source, v, elim))
        .collect();
    Ok(Submodule::with_basis(source.clone(), kernel))
}

/// Applies the map `e_j ↦ images[j]` to `α`.
pub fn apply_map(images: &[FreeModuleElement], alpha: &FreeModuleElement, target: &FreeModule) -> FreeModuleElement {
    let mut acc = target.zero();
    for (img, c) in images.iter().zip(&alpha.components) {
        if !c.is_zero() {
            acc = acc.add(&img.scale(c));
        }
    }
    acc
}

/// Checks Buchberger's criterion: every S-vector of `basis` reduces to zero.
pub fn satisfies_buchberger(ambient: &FreeModule, basis: &[FreeModuleElement]) -> bool {
    let order = ambient.order();
    let vs: Vec<Vector> = basis.iter().map(|g| g.to_vector(&order, 0)).collect();
    let b = Buchberger::from_basis(&order, vs.clone());
    b.all_s_vectors_reduce_to_zero()
}

/// Buchberger's criterion for a list of polynomials under `ord`.
pub fn is_groebner_basis(basis: &[Poly], ord: MonomialOrder) -> bool {
    let order = ModuleOrder::new(ord, vec![0]);
    let vs = basis.iter().map(|g| poly_to_vector(&order, g, 0)).collect();
    Buchberger::from_basis(&order, vs).all_s_vectors_reduce_to_zero()
}

#[cfg(test)]
mod tests;

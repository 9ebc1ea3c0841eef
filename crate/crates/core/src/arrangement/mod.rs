//! Central subspace arrangements over ℚ, their intersection lattices,
//! Möbius functions and characteristic polynomials.

mod charpoly;
pub mod linalg;

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{intersect_all, Ideal};
use crate::poly::{parse_poly, Poly, Rational, VariableNames, MAX_VARS};

pub use charpoly::CharPoly;
use linalg::{rank, rref, Row};

/// Linear subspace of `ℚ^ℓ`, stored as the reduced row echelon form of the
/// linear forms vanishing on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSubspace {
    ambient_dim: usize,
    forms: Vec<Row>,
}

impl LinearSubspace {
    pub fn from_forms(ambient_dim: usize, forms: &[Row]) -> Result<Self> {
        if let Some(f) = forms.iter().find(|f| f.len() != ambient_dim) {
            return Err(Error::input(format!(
                "linear form has {} coefficients, expected {ambient_dim}",
                f.len()
            )));
        }
        Ok(LinearSubspace { ambient_dim, forms: rref(forms) })
    }

    /// From homogeneous linear polynomials.
    pub fn from_polys(polys: &[Poly]) -> Result<Self> {
        let n = polys.first().map(Poly::nvars).ok_or_else(|| Error::input("no linear forms"))?;
        let rows = polys
            .iter()
            .map(|p| {
                p.as_linear_form()
                    .ok_or_else(|| Error::input(format!("{p} is not a homogeneous linear form")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_forms(n, &rows)
    }

    /// From linear forms written as text, e.g. `["x", "z"]`.
    pub fn parse(forms: &[&str], names: &VariableNames) -> Result<Self> {
        let polys = forms.iter().map(|f| parse_poly(f, names)).collect::<Result<Vec<_>>>()?;
        if polys.is_empty() {
            return Ok(Self::whole(names.len()));
        }
        Self::from_polys(&polys)
    }

    /// The whole space.
    pub fn whole(ambient_dim: usize) -> Self {
        LinearSubspace { ambient_dim, forms: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn codim(&self) -> usize {
        self.forms.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.codim()
    }

    /// Canonical defining forms.
    pub fn forms(&self) -> &[Row] {
        &self.forms
    }

    pub fn form_polys(&self) -> Vec<Poly> {
        self.forms.iter().map(|r| Poly::linear_form(r).primitive()).collect()
    }

    pub fn intersect(&self, other: &LinearSubspace) -> LinearSubspace {
        let mut rows = self.forms.clone();
        rows.extend(other.forms.iter().cloned());
        LinearSubspace { ambient_dim: self.ambient_dim, forms: rref(&rows) }
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &LinearSubspace) -> bool {
        let mut rows = other.forms.clone();
        rows.extend(self.forms.iter().cloned());
        rank(&rows) == other.codim()
    }

    /// Whether the hyperplane `form = 0` contains this subspace.
    pub fn lies_in_hyperplane(&self, form: &[Rational]) -> bool {
        let mut rows = self.forms.clone();
        rows.push(form.to_vec());
        rank(&rows) == self.codim()
    }

    /// Prime ideal generated by the defining forms.
    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.ambient_dim, self.form_polys()).expect("forms live in the ambient ring")
    }

    pub fn display_with<'a>(&'a self, names: &'a VariableNames) -> impl fmt::Display + 'a {
        DisplaySubspace { s: self, names }
    }
}

struct DisplaySubspace<'a> {
    s: &'a LinearSubspace,
    names: &'a VariableNames,
}

impl fmt::Display for DisplaySubspace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.forms.is_empty() {
            return write!(f, "V");
        }
        let parts: Vec<String> =
            self.s.form_polys().iter().map(|p| p.display_with(self.names).to_string()).collect();
        write!(f, "{{{} = 0}}", parts.join(" = "))
    }
}

impl fmt::Display for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = VariableNames::indexed(self.ambient_dim);
        fmt::Display::fmt(&DisplaySubspace { s: self, names: &names }, f)
    }
}

impl fmt::Debug for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Central arrangement of pairwise non-nested linear subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    components: Vec<LinearSubspace>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, components: Vec<LinearSubspace>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        if ambient_dim >= MAX_VARS {
            return Err(Error::input(format!(
                "ambient dimension {ambient_dim} too large; at most {} supported",
                MAX_VARS - 1
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if c.ambient_dim != ambient_dim {
                return Err(Error::input(format!("component {} lives in the wrong space", i + 1)));
            }
            if c.codim() == 0 {
                return Err(Error::input(format!("component {} is the whole space", i + 1)));
            }
            for (j, d) in components[..i].iter().enumerate() {
                if c == d {
                    return Err(Error::input(format!("components {} and {} coincide", j + 1, i + 1)));
                }
                if c.contains(d) || d.contains(c) {
                    return Err(Error::input(format!(
                        "components {} and {} are nested",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Arrangement { ambient_dim, components })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Arrangement { ambient_dim, components: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn components(&self) -> &[LinearSubspace] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Common codimension, or `None` if empty or not equidimensional.
    pub fn codim(&self) -> Option<usize> {
        let k = self.components.first()?.codim();
        self.components.iter().all(|c| c.codim() == k).then_some(k)
    }

    pub fn is_equidimensional(&self) -> bool {
        self.is_empty() || self.codim().is_some()
    }

    pub fn intersection_lattice(&self) -> IntersectionLattice {
        IntersectionLattice::new(self)
    }

    /// Components containing `y`; fails if `y` is not a lattice element.
    pub fn subarrangement_at(&self, y: &LinearSubspace) -> Result<Arrangement> {
        let lattice = self.intersection_lattice();
        if lattice.index_of(y).is_none() {
            return Err(Error::input(format!("{y} is not in the intersection lattice")));
        }
        Ok(self.subarrangement_containing(y))
    }

    pub(crate) fn subarrangement_containing(&self, y: &LinearSubspace) -> Arrangement {
        Arrangement {
            ambient_dim: self.ambient_dim,
            components: self.components.iter().filter(|c| c.contains(y)).cloned().collect(),
        }
    }

    /// `I_X`, generated by its reduced degrevlex Gröbner basis; the unit
    /// ideal for the empty arrangement.
    pub fn vanishing_ideal(&self) -> Result<Ideal> {
        let ideals: Vec<Ideal> = self.components.iter().map(LinearSubspace::ideal).collect();
        let i = intersect_all(self.ambient_dim, &ideals)?;
        Ideal::new(self.ambient_dim, i.groebner_basis().to_vec())
    }

    pub fn characteristic_polynomial(&self) -> CharPoly {
        self.intersection_lattice().characteristic_polynomial()
    }
}

/// Element of the intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNode {
    pub subspace: LinearSubspace,
    /// indices of the components containing the node
    pub containing: Vec<usize>,
    /// μ(V, Y)
    pub mobius: i64,
}

impl LatticeNode {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// All intersections of components, ordered by reverse inclusion; nodes are
/// sorted by decreasing dimension, then canonical form, so `V` comes first.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    ambient_dim: usize,
    nodes: Vec<LatticeNode>,
}

impl IntersectionLattice {
    fn new(a: &Arrangement) -> Self {
        let mut spaces = vec![LinearSubspace::whole(a.ambient_dim)];
        let mut frontier = spaces.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for y in &frontier {
                for c in &a.components {
                    let z = y.intersect(c);
                    if !spaces.contains(&z) {
                        spaces.push(z.clone());
                        next.push(z);
                    }
                }
            }
            frontier = next;
        }
        spaces.sort_by(|p, q| q.dim().cmp(&p.dim()).then_with(|| p.cmp(q)));
        let mut nodes: Vec<LatticeNode> = spaces
            .into_iter()
            .map(|s| {
                let containing =
                    (0..a.components.len()).filter(|&i| a.components[i].contains(&s)).collect();
                LatticeNode { subspace: s, containing, mobius: 0 }
            })
            .collect();
        let mut lattice = IntersectionLattice { ambient_dim: a.ambient_dim, nodes: Vec::new() };
        for idx in 0..nodes.len() {
            let mu = if idx == 0 {
                1
            } else {
                -(0..idx)
                    .filter(|&z| nodes[z].subspace.contains(&nodes[idx].subspace))
                    .map(|z| nodes[z].mobius)
                    .sum::<i64>()
            };
            nodes[idx].mobius = mu;
        }
        lattice.nodes = nodes;
        lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn nodes(&self) -> &[LatticeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, y: &LinearSubspace) -> Option<usize> {
        self.nodes.iter().position(|n| &n.subspace == y)
    }

    /// Whether `nodes[a] ≤ nodes[b]`, i.e. `nodes[b] ⊆ nodes[a]`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.nodes[a].subspace.contains(&self.nodes[b].subspace)
    }

    /// μ(V, Y) for every node, in node order.
    pub fn mobius(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.mobius).collect()
    }

    /// μ(Z, Y) on the interval `[Z, Y]`; zero unless `Z ≤ Y`.
    pub fn mobius_between(&self, z: usize, y: usize) -> i64 {
        if !self.le(z, y) {
            return 0;
        }
        // nodes in [z, y], already sorted by decreasing dimension
        let interval: Vec<usize> =
            (0..self.nodes.len()).filter(|&w| self.le(z, w) && self.le(w, y)).collect();
        let mut mu = vec![0i64; interval.len()];
        for (i, &w) in interval.iter().enumerate() {
            mu[i] = if w == z {
                1
            } else {
                -(0..i).filter(|&j| self.le(interval[j], w)).map(|j| mu[j]).sum::<i64>()
            };
        }
        *mu.last().expect("interval contains y")
    }

    /// `Σ_Y μ(Y) t^{dim Y}`.
    pub fn characteristic_polynomial(&self) -> CharPoly {
        let mut coeffs = vec![0i64; self.ambient_dim + 1];
        for n in &self.nodes {
            coeffs[n.dim()] += n.mobius;
        }
        CharPoly::new(coeffs)
    }
}

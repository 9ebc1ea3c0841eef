use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use multilog_core::arrangement::{Arrangement, LinearSubspace};
use multilog_core::ci::CIData;
use multilog_core::poly::{Rational, VariableNames};
use multilog_core::{Error, Result};

/// A rational coefficient written either as a string (`"3/2"`) or as a bare
/// integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient(pub Rational);

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coefficient;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a rational number as a string like \"3/2\" or an integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(Rational::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coefficient, E> {
                i64::try_from(v)
                    .map(|v| Coefficient(Rational::from(v)))
                    .map_err(|_| E::custom(format!("integer {v} is too large; write it as a string")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coefficient, E> {
                v.trim().parse().map(Coefficient).map_err(|e| E::custom(format!("bad rational {v:?}: {e}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// One component, given by the rows of a matrix whose rows are linear
/// forms vanishing on it.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub equations: Vec<Vec<Coefficient>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub ambient_dimension: usize,
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub subspaces: Vec<SubspaceSpec>,
    /// generators of a user-supplied complete intersection
    #[serde(default)]
    pub ci: Option<Vec<String>>,
    /// components of the user-supplied complete intersection, needed when a
    /// generator is not a product of linear forms
    #[serde(default)]
    pub ci_components: Option<Vec<SubspaceSpec>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub coeff_bound: Option<u64>,
}

impl ArrangementFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("invalid arrangement file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn names(&self) -> Result<VariableNames> {
        match &self.variables {
            None => Ok(VariableNames::indexed(self.ambient_dimension)),
            Some(vs) if vs.len() != self.ambient_dimension => Err(Error::input(format!(
                "{} variable names for ambient dimension {}",
                vs.len(),
                self.ambient_dimension
            ))),
            Some(vs) => VariableNames::new(vs.iter().cloned()),
        }
    }

    fn subspace(&self, spec: &SubspaceSpec, idx: usize) -> Result<LinearSubspace> {
        let label = spec.name.clone().unwrap_or_else(|| format!("#{}", idx + 1));
        if let Some(row) = spec.equations.iter().position(|r| r.len() != self.ambient_dimension) {
            return Err(Error::input(format!(
                "subspace {label}, row {}: expected {} coefficients, found {}",
                row + 1,
                self.ambient_dimension,
                spec.equations[row].len()
            )));
        }
        let rows: Vec<Vec<Rational>> =
            spec.equations.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect();
        LinearSubspace::from_forms(self.ambient_dimension, &rows)
            .map_err(|e| Error::input(format!("subspace {label}: {e}")))
    }

    pub fn arrangement(&self) -> Result<Arrangement> {
        let comps =
            self.subspaces.iter().enumerate().map(|(i, s)| self.subspace(s, i)).collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.ambient_dimension, comps)
    }

    /// The complete intersection written in the file, if any.
    pub fn user_ci(&self) -> Result<Option<CIData>> {
        let Some(gens) = &self.ci else {
            return Ok(None);
        };
        let names = self.names()?;
        let comps = self
            .ci_components
            .as_ref()
            .map(|cs| cs.iter().enumerate().map(|(i, s)| self.subspace(s, i)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        CIData::parse(&gens, &names, comps).map(Some)
    }
}

//! Instance files: a quotient ring, a module presentation and run options,
//! stored as TOML.
//!
//! ```toml
//! label = "embedded"
//! field = 0                    # 0 for the rationals, otherwise a prime
//! variables = ["x", "y"]
//! ideal = ["x^2", "x*y"]
//! module = [["y"]]             # rows of the presentation matrix
//!
//! [options]
//! window = 8
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::checker::Instance;
use crate::error::{Error, Result};
use crate::groebner::{Limits, QuotientRing};
use crate::resolution::ModulePresentation;
use crate::ring::{FieldSpec, MonomialOrder, PolyRing, QuotientRingSpec};

/// Window used when neither the file nor the caller chooses one.
pub const DEFAULT_WINDOW: usize = 6;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_min_primes: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minor_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_cap: Option<usize>,
}

impl InstanceOptions {
    fn is_empty(&self) -> bool {
        *self == InstanceOptions::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub field: u64,
    pub variables: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    pub module: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "InstanceOptions::is_empty")]
    pub options: InstanceOptions,
}

/// Settings given on top of a file, e.g. from the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub window: Option<usize>,
    /// Base limits, before the file's own caps; the environment when unset.
    pub limits: Option<Limits>,
}

const BUILTIN: [(&str, &str); 4] = [
    ("embedded", include_str!("../instances/embedded.inst")),
    ("matfac", include_str!("../instances/matfac.inst")),
    ("depth-zero", include_str!("../instances/depth-zero.inst")),
    ("shrink", include_str!("../instances/shrink.inst")),
];

/// Names of the shipped instances.
pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(n, _)| *n)
}

/// Text of a shipped instance.
pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let offset = e.span().map_or(0, |s| s.start);
            Error::Parse {
                offset,
                message: e.message().to_string(),
            }
        })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let text = builtin_text(name)
            .ok_or_else(|| Error::Instance(format!("no built-in instance `{name}`")))?;
        Self::parse(text)
    }

    /// The file describing an instance, with its window recorded. Row
    /// degrees are not stored; they are inferred again on loading.
    pub fn from_instance(inst: &Instance) -> Self {
        let ring = inst.ring();
        let spec = ring.spec();
        InstanceFile {
            label: Some(inst.label.clone()),
            field: ring.field().characteristic(),
            variables: ring.variables().to_vec(),
            ideal: spec.ideal_gens.iter().map(|g| spec.format(g)).collect(),
            module: inst
                .module
                .matrix()
                .rows()
                .iter()
                .map(|r| r.iter().map(|p| spec.format(p)).collect())
                .collect(),
            options: InstanceOptions {
                window: Some(inst.window),
                declared_min_primes: spec.declared_min_primes.as_ref().map(|ps| {
                    ps.iter()
                        .map(|p| p.iter().map(|g| spec.format(g)).collect())
                        .collect()
                }),
                ..InstanceOptions::default()
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance files serialize")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::from_characteristic(self.field)
    }

    /// Limits from the environment, then the file's options.
    pub fn limits(&self) -> Limits {
        self.limits_over(Limits::from_env())
    }

    /// `base` with the file's caps applied.
    pub fn limits_over(&self, base: Limits) -> Limits {
        let mut l = base;
        if let Some(c) = self.options.pair_cap {
            l.pair_cap = c;
        }
        if let Some(c) = self.options.minor_cap {
            l.minor_cap = c;
        }
        l
    }

    pub fn ring_spec(&self, field: FieldSpec) -> Result<QuotientRingSpec> {
        let ambient = PolyRing::new(&self.variables, field, MonomialOrder::GRevLex)?;
        let ideal = self
            .ideal
            .iter()
            .map(|t| ambient.parse(t))
            .collect::<Result<Vec<_>>>()?;
        let declared = match &self.options.declared_min_primes {
            Some(primes) => Some(
                primes
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|t| ambient.parse(t))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        QuotientRingSpec::new(ambient, ideal, declared)
    }

    pub fn window(&self, overrides: &Overrides) -> usize {
        overrides
            .window
            .or(self.options.window)
            .unwrap_or(DEFAULT_WINDOW)
    }

    pub fn instance(&self, overrides: &Overrides) -> Result<Instance> {
        let field = match overrides.field {
            Some(f) => f,
            None => self.field_spec()?,
        };
        let limits = match &overrides.limits {
            Some(base) => self.limits_over(base.clone()),
            None => self.limits(),
        };
        let ring = Arc::new(QuotientRing::new(self.ring_spec(field)?, limits)?);
        let rows = self
            .module
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| ring.spec().parse_poly(t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Instance("the module matrix has no rows".into()));
        }
        let module = ModulePresentation::from_rows(ring, rows, None)?;
        let label = self.label.clone().unwrap_or_else(|| "instance".into());
        Ok(Instance::new(label, module, self.window(overrides)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_round_trip() {
        for name in builtin_names() {
            let f = InstanceFile::builtin(name).unwrap();
            assert_eq!(f.label.as_deref(), Some(name));
            let again = InstanceFile::parse(&f.to_toml()).unwrap();
            assert_eq!(again, f);
            f.instance(&Overrides::default()).unwrap();
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            InstanceFile::parse("field = "),
            Err(Error::Parse { .. })
        ));
        let unknown = "field = 0\nvariables = [\"x\"]\nmodule = [[\"x\"]]\ncolour = 1\n";
        assert!(matches!(
            InstanceFile::parse(unknown),
            Err(Error::Parse { .. })
        ));
        let f =
            InstanceFile::parse("field = 4\nvariables = [\"x\"]\nmodule = [[\"x\"]]\n").unwrap();
        assert!(matches!(
            f.instance(&Overrides::default()),
            Err(Error::NotPrime { modulus: 4 })
        ));
        let f =
            InstanceFile::parse("field = 0\nvariables = [\"x\"]\nmodule = [[\"q\"]]\n").unwrap();
        assert!(matches!(
            f.instance(&Overrides::default()),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn empty_matrix_is_a_free_module() {
        let f = InstanceFile::parse("field = 0\nvariables = [\"x\"]\nmodule = [[]]\n").unwrap();
        let inst = f.instance(&Overrides::default()).unwrap();
        assert_eq!(inst.module.matrix().nrows(), 1);
        assert_eq!(inst.module.matrix().ncols(), 0);
    }

    #[test]
    fn overrides_win() {
        let f = InstanceFile::builtin("embedded").unwrap();
        let o = Overrides {
            field: Some(FieldSpec::Prime(101)),
            window: Some(3),
            limits: None,
        };
        let inst = f.instance(&o).unwrap();
        assert_eq!(inst.window, 3);
        assert_eq!(inst.ring().field(), FieldSpec::Prime(101));
    }
}

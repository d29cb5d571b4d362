//! Coefficient fields, monomials, polynomials, and the data describing a
//! quotient ring `S/I`.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{FieldSpec, Scalar, DEFAULT_PRIME};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{Homogeneity, Polynomial};

use crate::error::{Error, Result};

/// Number of variable slots kept free for elimination variables.
pub const RESERVED_VARS: usize = 2;

/// A polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub variables: Vec<String>,
    pub field: FieldSpec,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        variables: &[S],
        field: FieldSpec,
        order: MonomialOrder,
    ) -> Result<Self> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        if variables.len() + RESERVED_VARS > MAX_VARS {
            return Err(Error::TooManyVariables {
                count: variables.len(),
                max: MAX_VARS - RESERVED_VARS,
            });
        }
        for (i, v) in variables.iter().enumerate() {
            let valid = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Instance(format!("invalid variable name `{v}`")));
            }
            if variables[..i].contains(v) {
                return Err(Error::Instance(format!("duplicate variable `{v}`")));
            }
        }
        Ok(PolyRing {
            variables,
            field,
            order,
        })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars(), self.order)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(c, self.nvars(), self.order)
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::term(m, self.field.one(), self.nvars(), self.order)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var(i))
    }

    /// Parses text in the polynomial grammar of [`parse`](self).
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse::parse_poly(text, self)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.display(&self.variables).to_string()
    }

    /// Checks a polynomial belongs to this ring (variable count and order).
    pub fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch {
                left: p.nvars(),
                right: self.nvars(),
            });
        }
        Ok(())
    }
}

/// `R = S/I` for a homogeneous ideal `I`, optionally with declared minimal primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRingSpec {
    pub ambient: PolyRing,
    pub ideal_gens: Vec<Polynomial>,
    pub declared_min_primes: Option<Vec<Vec<Polynomial>>>,
}

impl QuotientRingSpec {
    /// Zero generators are dropped; the others must be homogeneous of positive degree.
    pub fn new(
        ambient: PolyRing,
        ideal_gens: Vec<Polynomial>,
        declared_min_primes: Option<Vec<Vec<Polynomial>>>,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        for g in ideal_gens {
            ambient.check(&g)?;
            match g.homogeneity() {
                Homogeneity::Zero => continue,
                Homogeneity::Homogeneous(0) => {
                    return Err(Error::NotHomogeneous(format!(
                        "ideal generator {} has degree 0",
                        ambient.format(&g)
                    )))
                }
                Homogeneity::Homogeneous(_) => gens.push(g.with_order(ambient.order)),
                Homogeneity::Mixed => {
                    return Err(Error::NotHomogeneous(format!(
                        "ideal generator {}",
                        ambient.format(&g)
                    )))
                }
            }
        }
        if let Some(primes) = &declared_min_primes {
            for p in primes.iter().flatten() {
                ambient.check(p)?;
            }
        }
        Ok(QuotientRingSpec {
            ambient,
            ideal_gens: gens,
            declared_min_primes,
        })
    }

    /// Convenience constructor from text.
    pub fn parse<S: AsRef<str>>(variables: &[S], field: FieldSpec, ideal: &[&str]) -> Result<Self> {
        let ambient = PolyRing::new(variables, field, MonomialOrder::GRevLex)?;
        let gens = ideal
            .iter()
            .map(|t| ambient.parse(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, gens, None)
    }

    pub fn with_declared_primes(mut self, primes: &[&[&str]]) -> Result<Self> {
        let parsed = primes
            .iter()
            .map(|p| {
                p.iter()
                    .map(|t| self.ambient.parse(t))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        self.declared_min_primes = Some(parsed);
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.ambient.field
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial> {
        self.ambient.parse(text)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.ambient.format(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inhomogeneous_ideal() {
        let err = QuotientRingSpec::parse(&["x"], FieldSpec::Rational, &["x + x^2"]).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
        let err = QuotientRingSpec::parse(&["x"], FieldSpec::Rational, &["3"]).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
    }

    #[test]
    fn drops_zero_generators() {
        let r = QuotientRingSpec::parse(&["x", "y"], FieldSpec::Rational, &["0", "x*y"]).unwrap();
        assert_eq!(r.ideal_gens.len(), 1);
    }

    #[test]
    fn homogeneous_degrees_of_fixture_generators() {
        let r = PolyRing::new(
            &["x", "y", "z", "u", "v", "a", "b", "c", "d", "e"],
            FieldSpec::Rational,
            MonomialOrder::GRevLex,
        )
        .unwrap();
        assert_eq!(r.parse("ade - bce").unwrap().homogeneous_degree(), Some(3));
        assert_eq!(
            r.parse("zu + xv + uv").unwrap().homogeneous_degree(),
            Some(2)
        );
        assert_eq!(
            r.parse("x + x^2").unwrap().homogeneity(),
            Homogeneity::Mixed
        );
    }

    #[test]
    fn too_many_variables() {
        let names: Vec<String> = (0..MAX_VARS).map(|i| format!("x{i}")).collect();
        assert!(matches!(
            PolyRing::new(&names, FieldSpec::Rational, MonomialOrder::GRevLex),
            Err(Error::TooManyVariables { .. })
        ));
    }
}

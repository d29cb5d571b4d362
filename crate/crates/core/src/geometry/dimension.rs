use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::ring::{Monomial, MonomialOrder};

/// Krull dimension of a ring or module. The zero ring and the zero module
/// are `Empty`, which sorts below every finite dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Empty,
    Finite(usize),
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::Empty => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => f.write_str("empty"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Supports of the monomial generators, as variable bitmasks.
pub(crate) fn monomial_supports(j: &Ideal) -> Result<Vec<u32>> {
    j.gens()
        .iter()
        .map(|g| {
            if g.is_monomial() {
                Ok(g.leading_monomial().unwrap().support())
            } else {
                Err(Error::NotMonomial(format!(
                    "generator with {} terms",
                    g.len()
                )))
            }
        })
        .collect()
}

fn dim_of_supports(supports: &[u32], nvars: usize) -> Dimension {
    // a constant generator has empty support and meets every subset
    if supports.contains(&0) {
        return Dimension::Empty;
    }
    let best = (0u32..1 << nvars)
        .filter(|s| supports.iter().all(|g| g & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Dimension::Finite(best)
}

/// `dim S/J` for a monomial ideal: the size of a largest set of variables
/// containing the support of no generator.
pub fn krull_dim_monomial(j: &Ideal, nvars: usize) -> Result<Dimension> {
    let supports = monomial_supports(j)?;
    Ok(dim_of_supports(&supports, nvars))
}

/// `dim S/J`, read off the leading-term ideal of a Gröbner basis in `order`.
pub fn krull_dim_in(j: &Ideal, order: MonomialOrder, config: &Limits) -> Result<Dimension> {
    let gens: Vec<_> = j.gens().iter().map(|g| g.with_order(order)).collect();
    let gb = crate::groebner::ideal_groebner(&gens, j.nvars(), order, config)?;
    let leads: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|(_, m): &(u32, Monomial)| m.support())
        .collect();
    Ok(dim_of_supports(&leads, j.nvars()))
}

/// `dim S/J` using grevlex.
pub fn krull_dim(j: &Ideal, config: &Limits) -> Result<Dimension> {
    krull_dim_in(j, MonomialOrder::GRevLex, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing};

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let r = PolyRing::new(vars, FieldSpec::Rational, MonomialOrder::GRevLex).unwrap();
        Ideal::new(
            r.nvars(),
            gens.iter().map(|t| r.parse(t).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn monomial_dimensions() {
        assert_eq!(
            krull_dim_monomial(&ideal(&["x", "y"], &["x^2", "x*y"]), 2).unwrap(),
            Dimension::Finite(1)
        );
        assert_eq!(
            krull_dim_monomial(&ideal(&["x", "y", "z"], &["y*z"]), 3).unwrap(),
            Dimension::Finite(2)
        );
        assert_eq!(
            krull_dim_monomial(&ideal(&["x", "y"], &["x", "y"]), 2).unwrap(),
            Dimension::Finite(0)
        );
        assert_eq!(
            krull_dim_monomial(&ideal(&["x", "y"], &["1"]), 2).unwrap(),
            Dimension::Empty
        );
        assert!(matches!(
            krull_dim_monomial(&ideal(&["x", "y"], &["x + y"]), 2),
            Err(Error::NotMonomial(_))
        ));
    }

    #[test]
    fn dimensions_through_initial_ideals() {
        let c = Limits::default();
        let v = ["a", "b", "c", "d", "e"];
        assert_eq!(
            krull_dim(&ideal(&v, &["a*d*e - b*c*e"]), &c).unwrap(),
            Dimension::Finite(4)
        );
        assert_eq!(
            krull_dim(&ideal(&v, &[]), &c).unwrap(),
            Dimension::Finite(5)
        );
        assert_eq!(
            krull_dim(&ideal(&["x", "y"], &["x*y - 1", "x"]), &c).unwrap(),
            Dimension::Empty
        );
        // twisted cubic: a curve in 3-space
        let t = ideal(&["x", "y", "z"], &["x^2 - y", "x*y - z"]);
        assert_eq!(krull_dim(&t, &c).unwrap(), Dimension::Finite(1));
        assert_eq!(
            krull_dim_in(&t, MonomialOrder::Lex, &c).unwrap(),
            Dimension::Finite(1)
        );
    }

    #[test]
    fn empty_sorts_first() {
        assert!(Dimension::Empty < Dimension::Finite(0));
        assert_eq!(Dimension::Empty.to_string(), "empty");
    }
}

use std::cmp::Ordering;
use std::fmt;

use super::field::Scalar;
use super::monomial::{Monomial, MonomialOrder};

/// Outcome of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    Zero,
    Homogeneous(u32),
    Mixed,
}

/// Exact multivariate polynomial. Terms are kept sorted in strictly
/// decreasing order under `order`, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Polynomial {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize, order: MonomialOrder) -> Self {
        Self::term(Monomial::one(), c, nvars, order)
    }

    pub fn term(mono: Monomial, c: Scalar, nvars: usize, order: MonomialOrder) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(mono, c)]
        };
        Polynomial {
            nvars,
            order,
            terms,
        }
    }

    /// Canonicalises an arbitrary list of terms.
    pub fn from_terms(
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut terms: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            nvars,
            order,
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(
        nvars: usize,
        order: MonomialOrder,
        terms: Vec<(Monomial, Scalar)>,
    ) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            nvars,
            order,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) if degs.all(|e| e == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// Homogeneous degree; `None` for zero or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.order, other.order, "monomial order mismatch");
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        self.check_compatible(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() || self.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    /// Multiplication by `c * mono`; order is preserved since monomial orders are multiplicative.
    pub fn mul_term(&self, mono: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut acc = Polynomial::zero(self.nvars, self.order);
        // multiply by the shorter operand term-by-term
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = match self.terms.first() {
            Some((_, c)) => Polynomial::constant(c.field().one(), self.nvars, self.order),
            None if n == 0 => panic!("0^0 has no field context"),
            None => return self.clone(),
        };
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        Polynomial::from_terms(self.nvars, order, self.terms.iter().cloned())
    }

    /// Reinterprets in a ring with more variables (the new ones absent).
    pub fn extend_vars(&self, nvars: usize, order: MonomialOrder) -> Polynomial {
        assert!(nvars >= self.nvars);
        let mut p = self.with_order(order);
        p.nvars = nvars;
        p
    }

    /// Restricts to the first `nvars` variables; the dropped ones must not occur.
    pub fn restrict_vars(&self, nvars: usize, order: MonomialOrder) -> Polynomial {
        debug_assert!(self
            .terms
            .iter()
            .all(|(m, _)| (nvars..self.nvars).all(|i| m.exponent(i) == 0)));
        let mut p = self.with_order(order);
        p.nvars = nvars;
        p
    }

    /// Whether any of the variables with index `>= first` occurs.
    pub fn involves_vars_from(&self, first: usize) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| (first..self.nvars).any(|i| m.exponent(i) > 0))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_compatible(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv();
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = c.mul(&lc_inv);
            rest = rest.sub(&divisor.mul_term(&q, &qc));
            quotient.push((q, qc));
        }
        // quotient monomials are produced in decreasing order
        Some(Polynomial::from_sorted_terms(
            self.nvars, self.order, quotient,
        ))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(self.names))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::FieldSpec;

    fn var(i: usize, n: usize) -> Polynomial {
        Polynomial::term(
            Monomial::var(i),
            FieldSpec::Rational.one(),
            n,
            MonomialOrder::GRevLex,
        )
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (var(0, 2), var(1, 2));
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let x = var(0, 2);
        let p = x.mul(&x).add(&var(1, 2));
        assert_eq!(p.add(&Polynomial::zero(2, MonomialOrder::GRevLex)), p);
    }

    #[test]
    fn exact_division() {
        let (x, y) = (var(0, 2), var(1, 2));
        let f = x.add(&y);
        let g = f.mul(&x.sub(&y)).mul(&y);
        assert_eq!(g.exact_div(&f).unwrap(), x.sub(&y).mul(&y));
        assert!(x.exact_div(&y).is_none());
    }

    #[test]
    fn homogeneity_markers() {
        let x = var(0, 1);
        assert_eq!(x.add(&x.mul(&x)).homogeneity(), Homogeneity::Mixed);
        assert_eq!(
            Polynomial::zero(1, MonomialOrder::GRevLex).homogeneity(),
            Homogeneity::Zero
        );
        assert_eq!(x.mul(&x).homogeneity(), Homogeneity::Homogeneous(2));
    }
}

//! Sparse elements of a free module `S^r`, stored as terms sorted in
//! decreasing module order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ring::{Monomial, MonomialOrder, Polynomial, Scalar};

/// How module terms `m * e_i` are compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrderKind {
    /// Component first (lower index is larger), then the monomial.
    #[default]
    PositionOverTerm,
    /// Monomial first, ties broken by component.
    TermOverPosition,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleOrder {
    pub monomial: MonomialOrder,
    pub kind: ModuleOrderKind,
}

impl ModuleOrder {
    pub fn new(monomial: MonomialOrder, kind: ModuleOrderKind) -> Self {
        ModuleOrder { monomial, kind }
    }

    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        match self.kind {
            ModuleOrderKind::PositionOverTerm => {
                b.0.cmp(&a.0).then_with(|| self.monomial.cmp(a.1, b.1))
            }
            ModuleOrderKind::TermOverPosition => {
                self.monomial.cmp(a.1, b.1).then_with(|| b.0.cmp(&a.0))
            }
        }
    }
}

pub type Term = (u32, Monomial, Scalar);

/// A vector of polynomials in sparse term form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    pub(crate) terms: Vec<Term>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Unit basis vector `c * e_comp`.
    pub fn basis(comp: u32, c: Scalar) -> Self {
        SparseVec {
            terms: vec![(comp, Monomial::one(), c)],
        }
    }

    pub fn from_polys(polys: &[Polynomial], order: &ModuleOrder) -> Self {
        let mut terms: Vec<Term> = polys
            .iter()
            .enumerate()
            .flat_map(|(k, p)| {
                p.terms()
                    .iter()
                    .map(move |(m, c)| (k as u32, *m, c.clone()))
            })
            .collect();
        terms.sort_by(|a, b| order.cmp((b.0, &b.1), (a.0, &a.1)));
        SparseVec { terms }
    }

    pub fn from_poly_in_comp(p: &Polynomial, comp: u32) -> Self {
        // a single component keeps the polynomial order, which agrees with any module order
        SparseVec {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| (comp, *m, c.clone()))
                .collect(),
        }
    }

    pub fn to_polys(&self, rank: usize, nvars: usize, order: MonomialOrder) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (k, m, c) in &self.terms {
            buckets[*k as usize].push((*m, c.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(nvars, order, b))
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            terms: self
                .terms
                .iter()
                .map(|(k, m, a)| (*k, *m, a.mul(c)))
                .collect(),
        }
    }

    /// `self + c * mono * other`.
    pub fn add_scaled(
        &self,
        other: &SparseVec,
        mono: &Monomial,
        c: &Scalar,
        order: &ModuleOrder,
    ) -> Self {
        SparseVec {
            terms: merge_scaled(&self.terms, &other.terms, mono, c, order),
        }
    }

    pub fn add(&self, other: &SparseVec, order: &ModuleOrder) -> Self {
        let one = match other.terms.first().or(self.terms.first()) {
            Some(t) => t.2.field().one(),
            None => return SparseVec::zero(),
        };
        self.add_scaled(other, &Monomial::one(), &one, order)
    }

    /// Multiplies every entry by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial, order: &ModuleOrder) -> Self {
        let mut acc = SparseVec::zero();
        for (m, c) in p.terms() {
            acc = acc.add_scaled(self, m, c, order);
        }
        acc
    }

    /// Largest component index plus one.
    pub fn support_rank(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.0 as usize + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Merges `a + c * mono * b`, both sorted descending.
pub(crate) fn merge_scaled(
    a: &[Term],
    b: &[Term],
    mono: &Monomial,
    c: &Scalar,
    order: &ModuleOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| -> Term {
        let (k, m, x) = &b[j];
        (*k, m.mul(mono), x.mul(c))
    };
    let mut pending: Option<Term> = if j < b.len() { Some(next_b(j)) } else { None };
    while i < a.len() {
        let Some(bt) = pending.take() else { break };
        match order.cmp((a[i].0, &a[i].1), (bt.0, &bt.1)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bt);
            }
            Ordering::Less => {
                out.push(bt);
                j += 1;
                pending = if j < b.len() { Some(next_b(j)) } else { None };
            }
            Ordering::Equal => {
                let s = a[i].2.add(&bt.2);
                if !s.is_zero() {
                    out.push((bt.0, bt.1, s));
                }
                i += 1;
                j += 1;
                pending = if j < b.len() { Some(next_b(j)) } else { None };
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(bt) = pending {
        out.push(bt);
        j += 1;
        while j < b.len() {
            out.push(next_b(j));
            j += 1;
        }
    }
    out
}

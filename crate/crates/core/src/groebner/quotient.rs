use std::collections::HashMap;

use super::basis::{ideal_groebner, GroebnerBasis};
use super::engine::{run, Limits, RunSpec};
use super::ideal::Ideal;
use super::vector::{ModuleOrder, ModuleOrderKind, SparseVec};
use crate::error::{Error, Result};
use crate::ring::{FieldSpec, Homogeneity, Monomial, MonomialOrder, Polynomial, QuotientRingSpec};

/// `R = S/I` together with a reduced Gröbner basis of `I` and the resource
/// limits used for every computation over it.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    spec: QuotientRingSpec,
    ideal: Ideal,
    gb: GroebnerBasis,
    basis: Vec<Polynomial>,
    config: Limits,
}

impl QuotientRing {
    pub fn new(spec: QuotientRingSpec, config: Limits) -> Result<Self> {
        let order = spec.ambient.order;
        let gb = ideal_groebner(&spec.ideal_gens, spec.nvars(), order, &config)?;
        let basis = gb.polys();
        let ideal = Ideal::new(spec.nvars(), spec.ideal_gens.clone())?;
        Ok(QuotientRing {
            spec,
            ideal,
            gb,
            basis,
            config,
        })
    }

    pub fn spec(&self) -> &QuotientRingSpec {
        &self.spec
    }

    /// `I` as an ideal of `S`.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ideal_basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn ideal_groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn config(&self) -> &Limits {
        &self.config
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    pub fn field(&self) -> FieldSpec {
        self.spec.field()
    }

    pub fn order(&self) -> MonomialOrder {
        self.spec.ambient.order
    }

    pub fn variables(&self) -> &[String] {
        &self.spec.ambient.variables
    }

    pub(crate) fn module_order(&self) -> ModuleOrder {
        ModuleOrder::new(self.order(), ModuleOrderKind::PositionOverTerm)
    }

    /// Normal form modulo `I`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.gb.poly_normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.spec.parse_poly(text)?))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.spec.format(p)
    }

    pub fn zero(&self) -> Polynomial {
        self.spec.ambient.zero()
    }

    pub fn one(&self) -> Polynomial {
        self.spec.ambient.one()
    }

    /// Gröbner basis of the submodule of `R^rank` spanned by `columns`.
    pub fn module_groebner(
        &self,
        columns: &[Vec<Polynomial>],
        rank: usize,
    ) -> Result<GroebnerBasis> {
        let order = self.module_order();
        let gens: Vec<SparseVec> = columns
            .iter()
            .map(|c| SparseVec::from_polys(c, &order))
            .collect();
        super::basis::buchberger_over(&gens, rank, self.nvars(), order, &self.basis, &self.config)
    }
}

/// Degree of a homogeneous column whose rows carry `row_degrees`; `None`
/// for a zero column.
pub fn column_degree(column: &[Polynomial], row_degrees: &[i32]) -> Result<Option<i32>> {
    let mut degree = None;
    for (p, &rd) in column.iter().zip(row_degrees) {
        let d = match p.homogeneity() {
            Homogeneity::Zero => continue,
            Homogeneity::Homogeneous(d) => d as i32 + rd,
            Homogeneity::Mixed => {
                return Err(Error::NotHomogeneous(
                    "matrix entry has mixed degrees".into(),
                ))
            }
        };
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(Error::NotHomogeneous(format!(
                    "column mixes degrees {e} and {d}"
                )))
            }
            _ => {}
        }
    }
    Ok(degree)
}

/// Result of one syzygy computation over `R`.
#[derive(Clone, Debug)]
pub(crate) struct SyzygyStep {
    /// Which input columns form a minimal generating set of their span.
    pub kept: Vec<bool>,
    /// Generators of the relations among the kept columns, in the
    /// coordinates of the kept columns (in input order).
    pub syzygies: Vec<Vec<Polynomial>>,
    /// For every input that was not kept, its relation `e_j - sum q_k e_k`.
    pub relations: Vec<Vec<Polynomial>>,
}

/// Runs the tracked, degree-interleaved Buchberger algorithm on homogeneous
/// columns over `R`.
pub(crate) fn syzygy_step(
    ring: &QuotientRing,
    columns: &[Vec<Polynomial>],
    row_degrees: &[i32],
) -> Result<SyzygyStep> {
    let order = ring.module_order();
    let rank = row_degrees.len();
    for c in columns {
        if c.len() != rank {
            return Err(Error::Shape(format!(
                "column of length {} in a map to rank {rank}",
                c.len()
            )));
        }
        column_degree(c, row_degrees)?;
    }
    let inputs: Vec<SparseVec> = columns
        .iter()
        .map(|c| {
            let reduced: Vec<Polynomial> = c.iter().map(|p| ring.reduce(p)).collect();
            SparseVec::from_polys(&reduced, &order)
        })
        .collect();
    let spec = RunSpec {
        rank,
        twists: row_degrees.to_vec(),
        order,
        ideal_basis: ring.ideal_basis(),
        homogeneous: true,
        track: true,
        stop_on_unit: false,
        config: ring.config(),
    };
    let out = run(&spec, &inputs)?;
    let position: HashMap<u32, u32> = out
        .kept
        .iter()
        .enumerate()
        .filter(|(_, k)| **k)
        .enumerate()
        .map(|(pos, (j, _))| (j as u32, pos as u32))
        .collect();
    let nkept = position.len();
    let nvars = ring.nvars();
    let syzygies = out
        .syzygies
        .iter()
        .map(|s| {
            let remapped = SparseVec {
                terms: s
                    .terms
                    .iter()
                    .map(|(k, m, c)| (position[k], *m, c.clone()))
                    .collect(),
            };
            remapped.to_polys(nkept, nvars, ring.order())
        })
        .collect();
    let relations = out
        .relations
        .iter()
        .map(|s| s.to_polys(columns.len(), nvars, ring.order()))
        .collect();
    Ok(SyzygyStep {
        kept: out.kept,
        syzygies,
        relations,
    })
}

/// Minimal homogeneous generators of the kernel of `R^n -> R^r`,
/// `e_j ↦ columns[j]`, canonicalized as by [`canonical_columns`].
pub fn syzygy_basis(
    ring: &QuotientRing,
    columns: &[Vec<Polynomial>],
    row_degrees: &[i32],
) -> Result<Vec<Vec<Polynomial>>> {
    let n = columns.len();
    let step = syzygy_step(ring, columns, row_degrees)?;
    let col_degrees: Vec<i32> = columns
        .iter()
        .map(|c| column_degree(c, row_degrees).map(|d| d.unwrap_or(0)))
        .collect::<Result<_>>()?;
    let kept_idx: Vec<usize> = (0..n).filter(|&j| step.kept[j]).collect();
    let mut all: Vec<Vec<Polynomial>> = step
        .syzygies
        .iter()
        .map(|s| {
            let mut full = vec![ring.zero(); n];
            for (pos, &j) in kept_idx.iter().enumerate() {
                full[j] = s[pos].clone();
            }
            full
        })
        .collect();
    all.extend(step.relations.iter().cloned());
    let all = canonical_columns(ring, &all, &col_degrees)?;
    let second = syzygy_step(ring, &all, &col_degrees)?;
    Ok(all
        .into_iter()
        .zip(second.kept)
        .filter_map(|(c, k)| k.then_some(c))
        .collect())
}

/// Reduces entries modulo `I`, drops zero columns, brings columns of equal
/// degree to reduced echelon form with monic leading terms, and sorts them
/// by degree and then by decreasing leading term.
pub fn canonical_columns(
    ring: &QuotientRing,
    columns: &[Vec<Polynomial>],
    row_degrees: &[i32],
) -> Result<Vec<Vec<Polynomial>>> {
    let order = ring.module_order();
    let rank = row_degrees.len();
    let mut by_degree: Vec<(i32, SparseVec)> = Vec::new();
    for c in columns {
        let reduced: Vec<Polynomial> = c.iter().map(|p| ring.reduce(p)).collect();
        if let Some(d) = column_degree(&reduced, row_degrees)? {
            by_degree.push((d, SparseVec::from_polys(&reduced, &order)));
        }
    }
    by_degree.sort_by_key(|(d, _)| *d);
    let mut out = Vec::new();
    let mut start = 0;
    while start < by_degree.len() {
        let d = by_degree[start].0;
        let end = start
            + by_degree[start..]
                .iter()
                .take_while(|(e, _)| *e == d)
                .count();
        let group: Vec<SparseVec> = by_degree[start..end]
            .iter()
            .map(|(_, v)| v.clone())
            .collect();
        for v in echelon(group, &order) {
            out.push(v.to_polys(rank, ring.nvars(), ring.order()));
        }
        start = end;
    }
    Ok(out)
}

fn coefficient_of(v: &SparseVec, comp: u32, mono: &Monomial) -> Option<crate::ring::Scalar> {
    v.terms
        .iter()
        .find(|(k, m, _)| *k == comp && m == mono)
        .map(|t| t.2.clone())
}

/// Reduced echelon form of a list of vectors over the coefficient field.
fn echelon(vectors: Vec<SparseVec>, order: &ModuleOrder) -> Vec<SparseVec> {
    let one = Monomial::one();
    let mut pivots: Vec<SparseVec> = Vec::new();
    for mut v in vectors {
        for p in &pivots {
            let (pc, pm, _) = p.lead().unwrap();
            if let Some(c) = coefficient_of(&v, *pc, pm) {
                v = v.add_scaled(p, &one, &c.neg(), order);
            }
        }
        if v.is_zero() {
            continue;
        }
        let inv = v.lead().unwrap().2.inv();
        v = v.scale(&inv);
        let (vc, vm) = (v.lead().unwrap().0, v.lead().unwrap().1);
        for p in pivots.iter_mut() {
            if let Some(c) = coefficient_of(p, vc, &vm) {
                *p = p.add_scaled(&v, &one, &c.neg(), order);
            }
        }
        pivots.push(v);
    }
    pivots.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        order.cmp((y.0, &y.1), (x.0, &x.1))
    });
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, QuotientRingSpec};

    fn quotient(vars: &[&str], ideal: &[&str]) -> QuotientRing {
        let spec = QuotientRingSpec::parse(vars, FieldSpec::Rational, ideal).unwrap();
        QuotientRing::new(spec, Limits::default()).unwrap()
    }

    fn col(r: &QuotientRing, entries: &[&str]) -> Vec<Polynomial> {
        entries.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn syzygy_of_y_over_embedded_ring() {
        let r = quotient(&["x", "y"], &["x^2", "x*y"]);
        let syz = syzygy_basis(&r, &[col(&r, &["y"])], &[0]).unwrap();
        assert_eq!(syz, vec![col(&r, &["x"])]);
    }

    #[test]
    fn unit_has_no_syzygies() {
        let r = quotient(&["x", "y"], &["x^2", "x*y"]);
        assert!(syzygy_basis(&r, &[col(&r, &["1"])], &[0])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn matrix_factorization_syzygies() {
        let r = quotient(&["a", "b", "c", "d", "e"], &["ade-bce"]);
        let cols = [col(&r, &["a", "c"]), col(&r, &["b", "d"])];
        let syz = syzygy_basis(&r, &cols, &[0, 0]).unwrap();
        let expected = [col(&r, &["d*e", "-c*e"]), col(&r, &["-b*e", "a*e"])];
        assert_eq!(syz.len(), 2);
        for e in &expected {
            let e_neg: Vec<Polynomial> = e.iter().map(|p| p.neg()).collect();
            let monic = if e[0].leading_coeff().unwrap().is_one() {
                e.clone()
            } else {
                e_neg
            };
            assert!(syz.contains(&monic), "{syz:?}");
        }
    }

    #[test]
    fn echelon_merges_dependent_columns() {
        let r = quotient(&["x", "y"], &[]);
        let cols = [
            col(&r, &["x", "y"]),
            col(&r, &["2*x", "2*y"]),
            col(&r, &["x", "0"]),
        ];
        let c = canonical_columns(&r, &cols, &[0, 0]).unwrap();
        assert_eq!(c, vec![col(&r, &["x", "0"]), col(&r, &["0", "y"])]);
    }
}

use super::engine::{interreduce, reduce_by, run, Limits, RunSpec};
use super::vector::{merge_scaled, ModuleOrder, SparseVec};
use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, Polynomial};

/// A reduced Gröbner basis of a submodule of `S^rank`.
///
/// When `augmented` is set the span also contains `I * S^rank` for the
/// ideal `I` of a quotient ring, so normal forms are taken over `S/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    rank: usize,
    order: ModuleOrder,
    elements: Vec<SparseVec>,
    augmented: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[SparseVec] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    /// Whether the span is everything (a unit vector in some component
    /// for each component, i.e. a constant in the ideal case).
    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1
            && self
                .elements
                .iter()
                .any(|e| e.lead().is_some_and(|t| t.1.is_one()))
    }

    /// Elements as polynomials; only meaningful for rank 1.
    pub fn polys(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|e| e.to_polys(1, self.nvars, self.order.monomial).remove(0))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<(u32, Monomial)> {
        self.elements
            .iter()
            .map(|e| {
                let t = e.lead().unwrap();
                (t.0, t.1)
            })
            .collect()
    }

    pub fn normal_form(&self, v: &SparseVec) -> SparseVec {
        let divisors: Vec<&SparseVec> = self.elements.iter().collect();
        SparseVec {
            terms: reduce_by(&v.terms, &divisors, &self.order),
        }
    }

    pub fn poly_normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = f.with_order(self.order.monomial);
        let v = SparseVec::from_poly_in_comp(&f, 0);
        let r = self.normal_form(&v);
        r.to_polys(1, self.nvars, self.order.monomial).remove(0)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.poly_normal_form(f).is_zero()
    }

    /// Number of S-pairs (same component) whose S-vector does not reduce to zero.
    pub fn unreduced_spairs(&self) -> usize {
        let mut bad = 0;
        for (a, x) in self.elements.iter().enumerate() {
            for y in &self.elements[a + 1..] {
                let (xc, xm, xk) = x.lead().unwrap();
                let (yc, ym, yk) = y.lead().unwrap();
                if xc != yc {
                    continue;
                }
                let l = xm.lcm(ym);
                let s = merge_scaled(
                    &[],
                    &x.terms,
                    &xm.quotient_of(&l).unwrap(),
                    &xk.inv(),
                    &self.order,
                );
                let s = merge_scaled(
                    &s,
                    &y.terms,
                    &ym.quotient_of(&l).unwrap(),
                    &yk.inv().neg(),
                    &self.order,
                );
                if !self.contains(&SparseVec { terms: s }) {
                    bad += 1;
                }
            }
        }
        bad
    }
}

/// Reduced Gröbner basis of the span of `gens` in `S^rank`.
pub fn buchberger(
    gens: &[SparseVec],
    rank: usize,
    nvars: usize,
    order: ModuleOrder,
    config: &Limits,
) -> Result<GroebnerBasis> {
    buchberger_over(gens, rank, nvars, order, &[], config)
}

/// Like [`buchberger`], with `I * S^rank` added to the span for the given
/// Gröbner basis of `I`.
pub(crate) fn buchberger_over(
    gens: &[SparseVec],
    rank: usize,
    nvars: usize,
    order: ModuleOrder,
    ideal_basis: &[Polynomial],
    config: &Limits,
) -> Result<GroebnerBasis> {
    if let Some(bad) = gens.iter().find(|g| g.support_rank() > rank) {
        return Err(Error::Shape(format!(
            "generator uses component {} in a module of rank {rank}",
            bad.support_rank() - 1
        )));
    }
    let spec = RunSpec {
        rank,
        twists: vec![0; rank],
        order,
        ideal_basis,
        homogeneous: false,
        track: false,
        stop_on_unit: false,
        config,
    };
    let gens: Vec<SparseVec> = gens.iter().map(|g| resort(g, &order)).collect();
    let out = run(&spec, &gens)?;
    Ok(GroebnerBasis {
        nvars,
        rank,
        order,
        elements: interreduce(out.elements, &order),
        augmented: !ideal_basis.is_empty(),
    })
}

fn resort(v: &SparseVec, order: &ModuleOrder) -> SparseVec {
    let mut terms = v.terms.clone();
    terms.sort_by(|a, b| order.cmp((b.0, &b.1), (a.0, &a.1)));
    SparseVec { terms }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, in the order of
/// the polynomials.
pub fn ideal_groebner(
    gens: &[Polynomial],
    nvars: usize,
    order: MonomialOrder,
    config: &Limits,
) -> Result<GroebnerBasis> {
    let gens = to_vecs(gens, nvars, order)?;
    buchberger(
        &gens,
        1,
        nvars,
        ModuleOrder::new(order, Default::default()),
        config,
    )
}

fn to_vecs(gens: &[Polynomial], nvars: usize, order: MonomialOrder) -> Result<Vec<SparseVec>> {
    gens.iter()
        .map(|g| {
            if g.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: g.nvars(),
                    right: nvars,
                });
            }
            Ok(SparseVec::from_poly_in_comp(&g.with_order(order), 0))
        })
        .collect()
}

/// Tests whether `1` lies in the ideal, stopping as soon as a constant appears.
pub(crate) fn generates_unit(
    gens: &[Polynomial],
    nvars: usize,
    order: MonomialOrder,
    config: &Limits,
) -> Result<bool> {
    let gens = to_vecs(gens, nvars, order)?;
    let spec = RunSpec {
        rank: 1,
        twists: vec![0],
        order: ModuleOrder::new(order, Default::default()),
        ideal_basis: &[],
        homogeneous: false,
        track: false,
        stop_on_unit: true,
        config,
    };
    let out = run(&spec, &gens)?;
    Ok(out.hit_unit
        || out
            .elements
            .iter()
            .any(|e| e.lead().is_some_and(|t| t.1.is_one())))
}

/// Normal form of `f` with respect to `gb`.
pub fn normal_form(f: &SparseVec, gb: &GroebnerBasis) -> SparseVec {
    gb.normal_form(f)
}


#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::testgen::{field, form};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bases_are_closed_and_contain_their_input(
            gens in field().prop_flat_map(|f| proptest::collection::vec((2u32..=3).prop_flat_map(move |d| form(3, d, 3, f)), 1..=3))
        ) {
            let cfg = Limits::default();
            let gb = ideal_groebner(&gens, 3, MonomialOrder::GRevLex, &cfg).unwrap();
            prop_assert_eq!(gb.unreduced_spairs(), 0);
            for g in &gens {
                prop_assert!(gb.contains_poly(g));
            }
            for g in &gens {
                let probe = g.mul(&gens[0]).add(g);
                let nf = gb.poly_normal_form(&probe);
                prop_assert_eq!(gb.poly_normal_form(&nf), nf.clone());
                prop_assert!(nf.is_zero());
            }
        }
    }
}

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::dimension::{krull_dim, Dimension};
use super::fitting::{binomial, fitting_minors};
use crate::error::{Error, Result};
use crate::groebner::{
    annihilator_of_ideal_mod, radical_membership, GroebnerBasis, Ideal, QuotientRing,
};
use crate::resolution::{ModulePresentation, Resolution};
use crate::ring::{MonomialOrder, Polynomial};

/// How the defining ideal of a support was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportRoute {
    /// Maximal minors of a presentation.
    Fitting,
    /// Annihilator of the image of `δ_i`, i.e. `(I : J)` for the ideal `J`
    /// of its entries.
    Image,
}

/// The closed set `supp(M) ⊆ Spec R`, cut out by `I + (extra)`.
///
/// Handles are compared only through radical membership.
#[derive(Clone, Debug)]
pub struct SupportHandle {
    ring: Arc<QuotientRing>,
    extra: Vec<Polynomial>,
    route: SupportRoute,
    basis: OnceLock<GroebnerBasis>,
}

impl SupportHandle {
    fn from_extra(ring: Arc<QuotientRing>, extra: Vec<Polynomial>, route: SupportRoute) -> Self {
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in extra {
            let g = ring.reduce(&g);
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            if g.is_constant() {
                kept = vec![ring.one()];
                break;
            }
            if !kept.contains(&g) {
                kept.push(g);
            }
        }
        SupportHandle {
            ring,
            extra: kept,
            route,
            basis: OnceLock::new(),
        }
    }

    /// Support of `M` through `Fitt_0(M)`.
    pub fn of_module(m: &ModulePresentation) -> Result<Self> {
        let extra = fitting_minors(m.ring(), m.matrix())?;
        Ok(Self::from_extra(
            m.ring().clone(),
            extra,
            SupportRoute::Fitting,
        ))
    }

    /// Support of `R/J` for an ideal `J` of `S`.
    pub fn of_cyclic(ring: &Arc<QuotientRing>, gens: &[Polynomial]) -> Self {
        Self::from_extra(ring.clone(), gens.to_vec(), SupportRoute::Fitting)
    }

    /// The whole of `Spec R`.
    pub fn full(ring: &Arc<QuotientRing>) -> Self {
        Self::from_extra(ring.clone(), Vec::new(), SupportRoute::Fitting)
    }

    /// Support of `Ω_i(M)` from a computed resolution.
    ///
    /// Uses the minors of `δ_{i+1}` when that map is computed and has at
    /// most `minor_cap` maximal minors. Otherwise, for `i ≥ 1`, uses
    /// `Ω_i ≅ im δ_i`, whose annihilator is `(I : J)` with `J` the ideal of
    /// entries of `δ_i`.
    pub fn of_syzygy(res: &Resolution, i: usize) -> Result<Self> {
        let ring = res.ring();
        let next = res.differential(i + 1);
        let within_cap =
            next.is_some_and(|m| binomial(m.ncols(), m.nrows()) <= ring.config().minor_cap as u128);
        if let Some(m) = next {
            // Ω_0 has no other description, so an oversized δ_1 hits the cap
            if within_cap || i == 0 {
                let extra = fitting_minors(ring, m)?;
                return Ok(Self::from_extra(ring.clone(), extra, SupportRoute::Fitting));
            }
        } else if res.is_terminated() {
            // past the end of a finite resolution
            return Ok(Self::from_extra(
                ring.clone(),
                vec![ring.one()],
                SupportRoute::Fitting,
            ));
        }
        match res.differential(i) {
            Some(d) if i >= 1 => Self::of_image(ring, d.entries()),
            _ => Err(Error::OutOfWindow {
                index: i + 1,
                len: res.maps().len(),
            }),
        }
    }

    /// Support of the submodule of a free module generated by columns with
    /// the given entries.
    pub fn of_image<'a>(
        ring: &Arc<QuotientRing>,
        entries: impl Iterator<Item = &'a Polynomial>,
    ) -> Result<Self> {
        let gens = entry_ideal_generators(ring, entries)?;
        if gens.is_empty() {
            // the zero submodule
            return Ok(Self::from_extra(
                ring.clone(),
                vec![ring.one()],
                SupportRoute::Image,
            ));
        }
        let ann = annihilator_of_ideal_mod(&gens, ring.ideal(), ring.config())?;
        Ok(Self::from_extra(
            ring.clone(),
            ann.gens().to_vec(),
            SupportRoute::Image,
        ))
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn route(&self) -> SupportRoute {
        self.route
    }

    /// Generators beyond `I`, reduced modulo `I` and monic.
    pub fn extra(&self) -> &[Polynomial] {
        &self.extra
    }

    /// The defining ideal in `S`, including the generators of `I`.
    pub fn ideal(&self) -> Ideal {
        let mut gens = self.ring.ideal().gens().to_vec();
        gens.extend(
            self.extra
                .iter()
                .map(|g| g.with_order(MonomialOrder::GRevLex)),
        );
        Ideal::new(self.ring.nvars(), gens).expect("generators live in the ring")
    }

    pub fn is_empty(&self) -> bool {
        self.extra.iter().any(|g| g.is_constant())
    }

    fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = self.ideal().groebner(self.ring.config())?;
        Ok(self.basis.get_or_init(|| b))
    }

    /// `f ∈ √(defining ideal)`, trying plain membership first.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        let f = f.with_order(MonomialOrder::GRevLex);
        if self.basis()?.contains_poly(&f) {
            return Ok(true);
        }
        radical_membership(&f, &self.ideal(), self.ring.config())
    }

    /// `self ⊆ other` as closed sets.
    pub fn is_subset_of(&self, other: &SupportHandle) -> Result<bool> {
        for g in &other.extra {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn dim(&self) -> Result<Dimension> {
        if self.is_empty() {
            return Ok(Dimension::Empty);
        }
        krull_dim(&self.ideal(), self.ring.config())
    }

    pub fn format(&self) -> String {
        if self.extra.is_empty() {
            return "Spec R".into();
        }
        let names = self.ring.variables();
        let parts: Vec<String> = self
            .extra
            .iter()
            .map(|g| g.display(names).to_string())
            .collect();
        format!("V({})", parts.join(", "))
    }
}

/// A generating set of `J + I` modulo `I` taken from the given entries:
/// each entry is kept only when it is not already in the ideal of `I` and
/// the entries kept so far. Lower degrees are visited first.
fn entry_ideal_generators<'a>(
    ring: &QuotientRing,
    entries: impl Iterator<Item = &'a Polynomial>,
) -> Result<Vec<Polynomial>> {
    let mut distinct: Vec<Polynomial> = Vec::new();
    for e in entries {
        let e = ring.reduce(e);
        if e.is_zero() {
            continue;
        }
        let e = e.monic().with_order(MonomialOrder::GRevLex);
        if !distinct.contains(&e) {
            distinct.push(e);
        }
    }
    distinct.sort_by_key(|e| (e.max_degree(), e.len()));
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut basis: Option<GroebnerBasis> = None;
    for e in distinct {
        if basis.is_none() {
            let mut gens = ring.ideal().gens().to_vec();
            gens.extend(kept.iter().cloned());
            basis = Some(Ideal::new(ring.nvars(), gens)?.groebner(ring.config())?);
        }
        if !basis.as_ref().unwrap().contains_poly(&e) {
            kept.push(e);
            basis = None;
        }
    }
    Ok(kept)
}

/// `√A = √B`, by radical membership of every generator both ways.
pub fn supp_equal(a: &SupportHandle, b: &SupportHandle) -> Result<bool> {
    Ok(a.is_subset_of(b)? && b.is_subset_of(a)?)
}

/// Whether the support is all of `Spec R`: every generator lies in `√I`.
pub fn supp_is_full(a: &SupportHandle) -> Result<bool> {
    SupportHandle::full(a.ring()).is_subset_of(a)
}

/// `dim M`, via `Fitt_0(M)`.
pub fn module_dim(m: &ModulePresentation) -> Result<Dimension> {
    SupportHandle::of_module(m)?.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Limits;
    use crate::resolution::resolve;
    use crate::ring::{FieldSpec, QuotientRingSpec};

    fn ring(vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let spec = QuotientRingSpec::parse(vars, FieldSpec::Rational, ideal).unwrap();
        Arc::new(QuotientRing::new(spec, Limits::default()).unwrap())
    }

    fn present(r: &Arc<QuotientRing>, rows: &[&[&str]]) -> ModulePresentation {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|t| r.parse(t).unwrap()).collect())
            .collect();
        ModulePresentation::from_rows(r.clone(), rows, None).unwrap()
    }

    fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> SupportHandle {
        let g: Vec<Polynomial> = gens.iter().map(|t| r.parse(t).unwrap()).collect();
        SupportHandle::of_cyclic(r, &g)
    }

    #[test]
    fn matrix_factorization_supports() {
        let r = ring(&["a", "b", "c", "d", "e"], &["a*d*e - b*c*e"]);
        let even = SupportHandle::of_module(&present(&r, &[&["a", "b"], &["c", "d"]])).unwrap();
        let odd =
            SupportHandle::of_module(&present(&r, &[&["d*e", "-b*e"], &["-c*e", "a*e"]])).unwrap();
        assert!(supp_is_full(&odd).unwrap());
        assert!(!supp_is_full(&even).unwrap());
        assert!(supp_equal(&even, &cyclic(&r, &["a*d - b*c"])).unwrap());
        assert!(supp_equal(&even, &even).unwrap());
        assert_eq!(even.dim().unwrap(), Dimension::Finite(4));
        assert_eq!(odd.dim().unwrap(), Dimension::Finite(4));
    }

    #[test]
    fn zero_and_free_modules() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let zero = SupportHandle::of_module(&present(&r, &[&["1"]])).unwrap();
        assert!(zero.is_empty());
        assert_eq!(zero.dim().unwrap(), Dimension::Empty);
        let free = SupportHandle::of_module(&ModulePresentation::free(r.clone(), vec![0])).unwrap();
        assert!(supp_is_full(&free).unwrap());
        assert_eq!(free.dim().unwrap(), Dimension::Finite(1));
    }

    #[test]
    fn embedded_dimensions_by_both_routes() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let res = resolve(&present(&r, &[&["y"]]), 6).unwrap();
        let dims: Vec<Dimension> = (0..5)
            .map(|i| SupportHandle::of_syzygy(&res, i).unwrap().dim().unwrap())
            .collect();
        let f = Dimension::Finite;
        assert_eq!(dims, vec![f(0), f(1), f(0), f(1), f(1)]);
        for i in 1..6 {
            let fit = SupportHandle::of_syzygy(&res, i).unwrap();
            assert_eq!(fit.route(), SupportRoute::Fitting);
            let img = SupportHandle::of_image(&r, res.differential(i).unwrap().entries()).unwrap();
            assert!(supp_equal(&fit, &img).unwrap(), "routes disagree at {i}");
        }
    }

    #[test]
    fn image_route_beyond_the_minor_cap() {
        let spec =
            QuotientRingSpec::parse(&["x", "y"], FieldSpec::Rational, &["x^2", "x*y"]).unwrap();
        let limits = Limits {
            minor_cap: 1,
            ..Limits::default()
        };
        let r = Arc::new(QuotientRing::new(spec, limits).unwrap());
        let res = resolve(&present(&r, &[&["y"]]), 5).unwrap();
        let h = SupportHandle::of_syzygy(&res, 4).unwrap();
        assert_eq!(h.route(), SupportRoute::Image);
        assert!(supp_is_full(&h).unwrap());
        // Ω_0 has no image description
        let res = resolve(&present(&r, &[&["x", "y", "0"], &["0", "0", "y"]]), 1).unwrap();
        assert!(matches!(
            SupportHandle::of_syzygy(&res, 0),
            Err(Error::LimitExceeded {
                cap: "minor_cap",
                ..
            })
        ));
    }

    #[test]
    fn out_of_window() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let res = resolve(&present(&r, &[&["y"]]), 2).unwrap();
        assert!(SupportHandle::of_syzygy(&res, 2).is_ok());
        assert!(matches!(
            SupportHandle::of_syzygy(&res, 3),
            Err(Error::OutOfWindow { .. })
        ));
    }

    #[test]
    fn finite_resolution_ends_in_empty_supports() {
        let r = ring(&["x", "y"], &[]);
        let res = resolve(&present(&r, &[&["x", "y"]]), 4).unwrap();
        // Ω_2 is free of rank one, Ω_3 vanishes
        assert!(supp_is_full(&SupportHandle::of_syzygy(&res, 2).unwrap()).unwrap());
        assert!(SupportHandle::of_syzygy(&res, 3).unwrap().is_empty());
        assert!(SupportHandle::of_syzygy(&res, 5).unwrap().is_empty());
        assert!(supp_is_full(&SupportHandle::of_syzygy(&res, 1).unwrap()).unwrap());
    }
}

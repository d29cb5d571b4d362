use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::matrix::{minimalize_presentation, GradedMatrix, ModulePresentation};
use crate::error::{Error, Result};
use crate::groebner::{canonical_columns, syzygy_step, QuotientRing};
use crate::ring::Polynomial;

/// Total Betti numbers `β_0, ..., β_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSequence {
    pub values: Vec<usize>,
    /// The resolution reached a zero module; every later Betti number is 0.
    pub terminated: bool,
}

impl BettiSequence {
    pub fn new(values: Vec<usize>, terminated: bool) -> Self {
        BettiSequence { values, terminated }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `β_i`, reading zeros past a terminated resolution.
    pub fn get(&self, i: usize) -> Option<usize> {
        match self.values.get(i) {
            Some(&b) => Some(b),
            None if self.terminated => Some(0),
            None => None,
        }
    }
}

/// Graded Betti numbers `β_{i,j}` keyed by `(i, j)`; absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub(crate) fn add(&mut self, i: usize, j: i32, n: usize) {
        if n > 0 {
            *self.entries.entry((i, j)).or_insert(0) += n;
        }
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, n)| n)
            .sum()
    }

    /// Largest internal degree occurring at homological degree `i`.
    pub fn max_degree(&self, i: usize) -> Option<i32> {
        self.entries
            .keys()
            .filter(|(k, _)| *k == i)
            .map(|(_, j)| *j)
            .max()
    }
}

/// A minimal graded free resolution computed up to a window.
///
/// `maps[k]` is `δ_{k+1}`; `Ω_i = coker δ_{i+1}`, so `Ω_0 = M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Arc<QuotientRing>,
    maps: Vec<GradedMatrix>,
    window: usize,
    terminated: bool,
}

/// Outcome of checking a resolution for the complex and minimality properties.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionAudit {
    pub compositions: usize,
    pub complex_violations: usize,
    pub entries: usize,
    pub unit_entries: usize,
}

impl Resolution {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    /// `δ_1, δ_2, ...` as computed.
    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    /// `δ_i` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedMatrix> {
        i.checked_sub(1).and_then(|k| self.maps.get(k))
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    pub fn betti(&self) -> BettiSequence {
        betti_sequence(self)
    }

    /// `β_{i,j}` read from the degrees of the computed maps.
    pub fn graded_betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        if let Some(d1) = self.maps.first() {
            for &r in d1.row_degrees() {
                t.add(0, r, 1);
            }
        }
        for (k, m) in self.maps.iter().enumerate() {
            for &c in m.col_degrees() {
                t.add(k + 1, c, 1);
            }
        }
        t
    }

    /// Degrees of the generators of the free module in homological degree `i`.
    pub fn generator_degrees(&self, i: usize) -> Option<&[i32]> {
        if i == 0 {
            return self.maps.first().map(|m| m.row_degrees());
        }
        self.maps.get(i - 1).map(|m| m.col_degrees())
    }

    /// Checks `δ_i δ_{i+1} ≡ 0` and that no entry has a constant term.
    pub fn audit(&self) -> Result<ResolutionAudit> {
        let mut a = ResolutionAudit::default();
        for w in self.maps.windows(2) {
            a.compositions += 1;
            let prod = w[0].compose(&w[1], &self.ring)?;
            a.complex_violations += prod.iter().flatten().filter(|p| !p.is_zero()).count();
        }
        for m in &self.maps {
            for p in m.entries() {
                a.entries += 1;
                if p.constant_term().is_some() {
                    a.unit_entries += 1;
                }
            }
        }
        Ok(a)
    }
}

/// Minimal graded free resolution of `M` through homological degree `window`
/// (the maps `δ_1, ..., δ_window`), stopping early when a syzygy module vanishes.
pub fn resolve(m: &ModulePresentation, window: usize) -> Result<Resolution> {
    let ring = m.ring().clone();
    let d1 = minimalize_presentation(&ring, m.matrix());
    let rows = d1.row_degrees().to_vec();
    let mut candidates = canonical_columns(&ring, d1.columns(), &rows)?;
    let mut row_degrees = rows;
    let mut maps: Vec<GradedMatrix> = Vec::new();
    let mut terminated = false;
    // δ_1 is always computed, so that β_0 and Ω_0 are available
    let last = window.max(1);
    for k in 1..=last {
        let step = syzygy_step(&ring, &candidates, &row_degrees).map_err(|e| in_step(e, k))?;
        let kept: Vec<Vec<Polynomial>> = candidates
            .into_iter()
            .zip(&step.kept)
            .filter_map(|(c, &keep)| keep.then_some(c))
            .collect();
        let delta = GradedMatrix::from_columns(row_degrees, kept)?;
        row_degrees = delta.col_degrees().to_vec();
        maps.push(delta);
        if step.syzygies.is_empty() {
            terminated = true;
            maps.push(GradedMatrix::empty(row_degrees.clone()));
            break;
        }
        if k == last {
            break;
        }
        candidates = canonical_columns(&ring, &step.syzygies, &row_degrees)?;
    }
    Ok(Resolution {
        ring,
        maps,
        window,
        terminated,
    })
}

fn in_step(e: Error, k: usize) -> Error {
    match e {
        Error::LimitExceeded {
            cap,
            limit,
            context,
        } => Error::LimitExceeded {
            cap,
            limit,
            context: format!("{context} (computing the generators of homological degree {k})"),
        },
        other => other,
    }
}

/// `β_i` for every homological degree the resolution determines.
pub fn betti_sequence(res: &Resolution) -> BettiSequence {
    let mut values = Vec::with_capacity(res.maps.len() + 1);
    if let Some(d1) = res.maps.first() {
        values.push(d1.nrows());
    }
    for m in &res.maps {
        values.push(m.ncols());
    }
    if res.terminated {
        while values.len() > 1 && values[values.len() - 1] == 0 && values[values.len() - 2] == 0 {
            values.pop();
        }
    }
    BettiSequence::new(values, res.terminated)
}

/// `Ω_i(M) = coker δ_{i+1}`; `Ω_0` is the minimalized input.
pub fn syzygy_presentation(res: &Resolution, i: usize) -> Result<ModulePresentation> {
    match res.maps.get(i) {
        Some(m) => ModulePresentation::new(res.ring.clone(), m.clone()),
        None if res.terminated => Ok(ModulePresentation::free(res.ring.clone(), Vec::new())),
        None => Err(Error::OutOfWindow {
            index: i,
            len: res.maps.len(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Limits;
    use crate::ring::{FieldSpec, QuotientRingSpec};

    fn ring(vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let spec = QuotientRingSpec::parse(vars, FieldSpec::Rational, ideal).unwrap();
        Arc::new(QuotientRing::new(spec, Limits::default()).unwrap())
    }

    fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> ModulePresentation {
        let g: Vec<Polynomial> = gens.iter().map(|t| r.parse(t).unwrap()).collect();
        ModulePresentation::cyclic(r.clone(), &g).unwrap()
    }

    #[test]
    fn embedded_betti() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let res = resolve(&cyclic(&r, &["y"]), 4).unwrap();
        assert_eq!(res.betti().values, vec![1, 1, 1, 2, 3]);
        assert!(!res.is_terminated());
        let a = res.audit().unwrap();
        assert_eq!((a.complex_violations, a.unit_entries), (0, 0));
        let d2 = res.differential(2).unwrap();
        assert_eq!(d2.columns(), &[vec![r.parse("x").unwrap()]]);
    }

    #[test]
    fn free_module_terminates() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let m = ModulePresentation::free(r, vec![0]);
        let res = resolve(&m, 4).unwrap();
        assert!(res.is_terminated());
        assert_eq!(res.betti().values, vec![1, 0]);
    }

    #[test]
    fn koszul_complex() {
        let r = ring(&["x", "y"], &[]);
        let res = resolve(&cyclic(&r, &["x", "y"]), 5).unwrap();
        assert!(res.is_terminated());
        assert_eq!(res.betti().values, vec![1, 2, 1, 0]);
        let t = res.graded_betti();
        assert_eq!((t.get(0, 0), t.get(1, 1), t.get(2, 2)), (1, 2, 1));
    }

    #[test]
    fn zero_module() {
        let r = ring(&["x"], &[]);
        let res = resolve(&cyclic(&r, &["1"]), 3).unwrap();
        assert!(res.is_terminated());
        assert_eq!(res.betti().values, vec![0]);
    }

    #[test]
    fn out_of_window() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let res = resolve(&cyclic(&r, &["y"]), 2).unwrap();
        assert!(syzygy_presentation(&res, 1).is_ok());
        assert!(matches!(
            syzygy_presentation(&res, 2),
            Err(Error::OutOfWindow { .. })
        ));
    }
}

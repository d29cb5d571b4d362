//! Dense echelon forms over the coefficient field.

use crate::ring::{FieldSpec, Scalar};

/// Rows in echelon form: each row has a pivot column at which it is 1 and
/// every later-inserted row is 0.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                axpy(v, row, &c.neg());
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        match v.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(p) => {
                let inv = v[p].inv();
                for c in v.iter_mut() {
                    *c = c.mul(&inv);
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// `v += c * w`.
pub(crate) fn axpy(v: &mut [Scalar], w: &[Scalar], c: &Scalar) {
    for (a, b) in v.iter_mut().zip(w) {
        if !b.is_zero() {
            *a = a.add(&b.mul(c));
        }
    }
}

/// Basis of `{x : Σ x_j images[j] = 0}`.
pub(crate) fn kernel(images: &[Vec<Scalar>], width: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let n = images.len();
    let mut rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        debug_assert_eq!(img.len(), width);
        let mut v = img.clone();
        let mut combo = vec![field.zero(); n];
        combo[j] = field.one();
        for (p, r, rc) in &rows {
            if !v[*p].is_zero() {
                let c = v[*p].neg();
                axpy(&mut v, r, &c);
                axpy(&mut combo, rc, &c);
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => out.push(combo),
            Some(p) => {
                let inv = v[p].inv();
                for c in v.iter_mut().chain(combo.iter_mut()) {
                    *c = c.mul(&inv);
                }
                rows.push((p, v, combo));
            }
        }
    }
    out
}

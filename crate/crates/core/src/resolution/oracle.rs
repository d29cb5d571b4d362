//! Graded Betti numbers by linear algebra on graded pieces.
//!
//! `R_t = S_t / I_t` is computed directly as a quotient of vector spaces
//! (`I_t` spanned by `m * g` for generators `g` of `I`), without Gröbner
//! bases. Kernels and minimal generators are then found degree by degree.

use std::collections::HashMap;

use super::linalg::{kernel, Echelon};
use super::matrix::ModulePresentation;
use super::resolve::BettiTable;
use crate::error::{Error, Result};
use crate::ring::{FieldSpec, Monomial, MonomialOrder, Polynomial, Scalar};

/// All monomials of total degree `t` in `n` variables, largest first.
fn monomials_of_degree(n: usize, t: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    if n == 0 {
        if t == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, t, &mut exps, &mut out);
    out.sort_by(|a, b| MonomialOrder::GRevLex.cmp(b, a));
    out
}

struct Piece {
    index: HashMap<Monomial, usize>,
    ideal: Echelon,
    /// Monomials spanning `R_t`: those outside the pivot columns of `I_t`.
    standard: Vec<Monomial>,
    standard_pos: Vec<usize>,
}

struct GradedRing {
    nvars: usize,
    field: FieldSpec,
    ideal: Vec<Polynomial>,
    pieces: HashMap<i32, Piece>,
}

impl GradedRing {
    fn piece(&mut self, t: i32) -> &Piece {
        if !self.pieces.contains_key(&t) {
            let p = self.build(t);
            self.pieces.insert(t, p);
        }
        &self.pieces[&t]
    }

    fn build(&self, t: i32) -> Piece {
        let monos = if t < 0 {
            Vec::new()
        } else {
            monomials_of_degree(self.nvars, t as u32)
        };
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut ideal = Echelon::new(monos.len());
        for g in &self.ideal {
            let d = g.homogeneous_degree().unwrap() as i32;
            if d > t {
                continue;
            }
            for m in monomials_of_degree(self.nvars, (t - d) as u32) {
                let mut v = vec![self.field.zero(); monos.len()];
                for (gm, c) in g.terms() {
                    v[index[&gm.mul(&m)]] = c.clone();
                }
                ideal.insert(v);
            }
        }
        let mut is_pivot = vec![false; monos.len()];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let standard_pos: Vec<usize> = (0..monos.len()).filter(|&i| !is_pivot[i]).collect();
        let standard = standard_pos.iter().map(|&i| monos[i]).collect();
        Piece {
            index,
            ideal,
            standard,
            standard_pos,
        }
    }

    fn dim(&mut self, t: i32) -> usize {
        self.piece(t).standard.len()
    }

    /// Coordinates of a degree-`t` polynomial in `R_t`.
    fn coords(&mut self, p: &Polynomial, t: i32) -> Vec<Scalar> {
        let field = self.field;
        let piece = self.piece(t);
        let mut v = vec![field.zero(); piece.index.len()];
        for (m, c) in p.terms() {
            let i = piece.index[m];
            v[i] = v[i].add(c);
        }
        piece.ideal.reduce(&mut v);
        piece.standard_pos.iter().map(|&i| v[i].clone()).collect()
    }

    fn poly(&mut self, coords: &[Scalar], t: i32) -> Polynomial {
        let n = self.nvars;
        let piece = self.piece(t);
        let terms = piece
            .standard
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c.clone()));
        Polynomial::from_terms(n, MonomialOrder::GRevLex, terms)
    }
}

/// A graded free module `⊕ R(-d_k)` and coordinates on its graded pieces.
struct Free {
    degrees: Vec<i32>,
}

impl Free {
    fn dim(&self, ring: &mut GradedRing, e: i32) -> usize {
        self.degrees.iter().map(|&d| ring.dim(e - d)).sum()
    }

    fn coords(&self, ring: &mut GradedRing, elem: &[Polynomial], e: i32) -> Vec<Scalar> {
        let mut out = Vec::new();
        for (p, &d) in elem.iter().zip(&self.degrees) {
            out.extend(ring.coords(p, e - d));
        }
        out
    }

    fn element(&self, ring: &mut GradedRing, coords: &[Scalar], e: i32) -> Vec<Polynomial> {
        let mut out = Vec::with_capacity(self.degrees.len());
        let mut at = 0;
        for &d in &self.degrees {
            let n = ring.dim(e - d);
            out.push(ring.poly(&coords[at..at + n], e - d));
            at += n;
        }
        out
    }

    /// `(k, u)` for each basis vector `u * ε_k` of the degree-`e` piece.
    fn basis(&self, ring: &mut GradedRing, e: i32) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (k, &d) in self.degrees.iter().enumerate() {
            let std = ring.piece(e - d).standard.clone();
            out.extend(std.into_iter().map(|u| (k, u)));
        }
        out
    }
}

fn mul_elem(elem: &[Polynomial], u: &Monomial, one: &Scalar) -> Vec<Polynomial> {
    elem.iter().map(|p| p.mul_term(u, one)).collect()
}

/// Graded Betti numbers `β_{i,j}` of `M` for `j ≤ degree_bound` and
/// `i ≤ hom_bound`.
///
/// Fails with [`Error::BoundTooSmall`] when a generator or relation of the
/// presentation lies above `degree_bound`.
pub fn graded_betti_oracle(
    m: &ModulePresentation,
    degree_bound: i32,
    hom_bound: usize,
) -> Result<BettiTable> {
    let mat = m.matrix();
    let ring_q = m.ring();
    if let Some(&d) = mat
        .row_degrees()
        .iter()
        .chain(mat.col_degrees())
        .filter(|&&d| d > degree_bound)
        .max()
    {
        return Err(Error::BoundTooSmall {
            bound: degree_bound,
            degree: d,
        });
    }
    let field = ring_q.field();
    let one = field.one();
    let ideal: Vec<Polynomial> = ring_q
        .spec()
        .ideal_gens
        .iter()
        .map(|g| g.with_order(MonomialOrder::GRevLex))
        .collect();
    let mut ring = GradedRing {
        nvars: ring_q.nvars(),
        field,
        ideal,
        pieces: HashMap::new(),
    };
    let mut table = BettiTable::default();
    let f0 = Free {
        degrees: mat.row_degrees().to_vec(),
    };
    if f0.degrees.is_empty() {
        return Ok(table);
    }
    let low = *f0.degrees.iter().min().unwrap();
    let columns: Vec<(Vec<Polynomial>, i32)> = mat
        .columns()
        .iter()
        .zip(mat.col_degrees())
        .map(|(c, &d)| {
            (
                c.iter()
                    .map(|p| p.with_order(MonomialOrder::GRevLex))
                    .collect(),
                d,
            )
        })
        .collect();

    // relations N ⊆ F0, degree by degree
    let mut relations: HashMap<i32, Echelon> = HashMap::new();
    for e in low..=degree_bound {
        let mut ech = Echelon::new(f0.dim(&mut ring, e));
        for (col, d) in &columns {
            for u in ring.piece(e - d).standard.clone() {
                let v = f0.coords(&mut ring, &mul_elem(col, &u, &one), e);
                ech.insert(v);
            }
        }
        relations.insert(e, ech);
    }

    // minimal generators of M: generators not in N + m F0
    let mut selected: Vec<usize> = Vec::new();
    for e in low..=degree_bound {
        let mut w = relations[&e].clone();
        let basis = f0.basis(&mut ring, e);
        for (pos, (_, u)) in basis.iter().enumerate() {
            if !u.is_one() {
                let mut v = vec![field.zero(); basis.len()];
                v[pos] = one.clone();
                w.insert(v);
            }
        }
        for (pos, (k, u)) in basis.iter().enumerate() {
            if u.is_one() {
                let mut v = vec![field.zero(); basis.len()];
                v[pos] = one.clone();
                if w.insert(v) {
                    selected.push(*k);
                    table.add(0, e, 1);
                }
            }
        }
    }
    if hom_bound == 0 || selected.is_empty() {
        return Ok(table);
    }

    // kernel of F0' -> F0 / N
    let mut free = Free {
        degrees: selected.iter().map(|&k| f0.degrees[k]).collect(),
    };
    let mut kernels: HashMap<i32, Vec<Vec<Polynomial>>> = HashMap::new();
    for e in low..=degree_bound {
        let basis = free.basis(&mut ring, e);
        let width = f0.dim(&mut ring, e);
        let images: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|(s, u)| {
                let mut elem = vec![ring_zero(&ring); f0.degrees.len()];
                elem[selected[*s]] =
                    Polynomial::term(*u, one.clone(), ring.nvars, MonomialOrder::GRevLex);
                let mut v = f0.coords(&mut ring, &elem, e);
                relations[&e].reduce(&mut v);
                v
            })
            .collect();
        let ker = kernel(&images, width, field);
        let elems = ker.iter().map(|k| free.element(&mut ring, k, e)).collect();
        kernels.insert(e, elems);
    }

    for i in 1..=hom_bound {
        // minimal generators of the current kernel
        let mut gens: Vec<(Vec<Polynomial>, i32)> = Vec::new();
        for e in low..=degree_bound {
            let dim = free.dim(&mut ring, e);
            let mut span = Echelon::new(dim);
            if let Some(prev) = kernels.get(&(e - 1)) {
                for k in prev {
                    for x in 0..ring.nvars {
                        let v = free.coords(&mut ring, &mul_elem(k, &Monomial::var(x), &one), e);
                        span.insert(v);
                    }
                }
            }
            for k in &kernels[&e] {
                let v = free.coords(&mut ring, k, e);
                if span.insert(v) {
                    gens.push((k.clone(), e));
                    table.add(i, e, 1);
                }
            }
        }
        if i == hom_bound || gens.is_empty() {
            break;
        }
        // kernel of the map from the new free module onto those generators
        let next = Free {
            degrees: gens.iter().map(|(_, d)| *d).collect(),
        };
        let mut next_kernels = HashMap::new();
        for e in low..=degree_bound {
            let basis = next.basis(&mut ring, e);
            let width = free.dim(&mut ring, e);
            let images: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|(g, u)| free.coords(&mut ring, &mul_elem(&gens[*g].0, u, &one), e))
                .collect();
            let ker = kernel(&images, width, field);
            let elems = ker.iter().map(|k| next.element(&mut ring, k, e)).collect();
            next_kernels.insert(e, elems);
        }
        free = next;
        kernels = next_kernels;
    }
    Ok(table)
}

fn ring_zero(ring: &GradedRing) -> Polynomial {
    Polynomial::zero(ring.nvars, MonomialOrder::GRevLex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one()]);
        let m = monomials_of_degree(2, 2);
        assert_eq!(m[0], Monomial::from_exponents(&[2, 0]));
    }
}

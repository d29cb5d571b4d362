use super::basis::{generates_unit, ideal_groebner, GroebnerBasis};
use super::engine::Limits;
use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, Polynomial, MAX_VARS};

/// An ideal of `S` given by generators. Two ideals are compared through
/// membership, never through their generator lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; the rest are stored in grevlex order.
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: g.nvars(),
                    right: nvars,
                });
            }
            if !g.is_zero() {
                out.push(g.with_order(MonomialOrder::GRevLex));
            }
        }
        Ok(Ideal { nvars, gens: out })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn groebner(&self, config: &Limits) -> Result<GroebnerBasis> {
        ideal_groebner(&self.gens, self.nvars, MonomialOrder::GRevLex, config)
    }

    /// The same ideal, generated by its reduced grevlex Gröbner basis.
    pub fn reduced(&self, config: &Limits) -> Result<Ideal> {
        Ok(Ideal {
            nvars: self.nvars,
            gens: self.groebner(config)?.polys(),
        })
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal {
            nvars: self.nvars,
            gens,
        }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul(b)))
            .collect();
        Ideal {
            nvars: self.nvars,
            gens,
        }
    }

    /// `self ⊇ other`.
    pub fn contains_ideal(&self, other: &Ideal, config: &Limits) -> Result<bool> {
        let gb = self.groebner(config)?;
        Ok(other.gens.iter().all(|g| gb.contains_poly(g)))
    }

    /// Equality as ideals, by mutual membership.
    pub fn same_ideal(&self, other: &Ideal, config: &Limits) -> Result<bool> {
        Ok(self.contains_ideal(other, config)? && other.contains_ideal(self, config)?)
    }

    /// `√self ⊇ other`.
    pub fn radical_contains(&self, other: &Ideal, config: &Limits) -> Result<bool> {
        for g in &other.gens {
            if !radical_membership(g, self, config)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| g.display(names).to_string())
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// `f ∈ J`.
pub fn ideal_membership(f: &Polynomial, j: &Ideal, config: &Limits) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(j.groebner(config)?.contains_poly(f))
}

/// `f ∈ √J`, by the Rabinowitsch trick `1 ∈ J + (1 - t f)` with a fresh
/// variable `t`. Monomial `f` against a monomial `J` is decided directly.
pub fn radical_membership(f: &Polynomial, j: &Ideal, config: &Limits) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if f.is_constant() {
        return generates_unit(&j.gens, j.nvars, MonomialOrder::GRevLex, config);
    }
    if j.is_zero() {
        return Ok(false);
    }
    if f.is_monomial() && j.is_monomial() {
        let supp = f.leading_monomial().unwrap().support();
        return Ok(j
            .gens
            .iter()
            .any(|g| g.leading_monomial().unwrap().support() & !supp == 0));
    }
    let n = j.nvars;
    if n + 1 > MAX_VARS {
        return Err(Error::TooManyVariables {
            count: n + 1,
            max: MAX_VARS - 1,
        });
    }
    let order = MonomialOrder::GRevLex;
    let field = f.leading_coeff().unwrap().field();
    let t = Polynomial::term(Monomial::var(n), field.one(), n + 1, order);
    let one = Polynomial::constant(field.one(), n + 1, order);
    let mut gens: Vec<Polynomial> = j.gens.iter().map(|g| g.extend_vars(n + 1, order)).collect();
    gens.push(one.sub(&t.mul(&f.extend_vars(n + 1, order))));
    generates_unit(&gens, n + 1, order, config)
}

/// `J ∩ K` by eliminating `t` from `t J + (1 - t) K`.
pub fn ideal_intersection(j: &Ideal, k: &Ideal, config: &Limits) -> Result<Ideal> {
    if j.nvars != k.nvars {
        return Err(Error::VariableMismatch {
            left: j.nvars,
            right: k.nvars,
        });
    }
    let n = j.nvars;
    if j.is_zero() || k.is_zero() {
        return Ok(Ideal::zero(n));
    }
    if j.is_monomial() && k.is_monomial() {
        let mut gens = Vec::new();
        for a in &j.gens {
            for b in &k.gens {
                let m = a
                    .leading_monomial()
                    .unwrap()
                    .lcm(&b.leading_monomial().unwrap());
                gens.push(Polynomial::term(
                    m,
                    a.leading_coeff().unwrap().field().one(),
                    n,
                    MonomialOrder::GRevLex,
                ));
            }
        }
        return Ideal::new(n, gens)?.reduced(config);
    }
    if n + 1 > MAX_VARS {
        return Err(Error::TooManyVariables {
            count: n + 1,
            max: MAX_VARS - 1,
        });
    }
    let order = MonomialOrder::Elimination(n as u8);
    let field = j.gens[0].leading_coeff().unwrap().field();
    let t = Polynomial::term(Monomial::var(n), field.one(), n + 1, order);
    let one_minus_t = Polynomial::constant(field.one(), n + 1, order).sub(&t);
    let mut gens: Vec<Polynomial> = j
        .gens
        .iter()
        .map(|g| t.mul(&g.extend_vars(n + 1, order)))
        .collect();
    gens.extend(
        k.gens
            .iter()
            .map(|g| one_minus_t.mul(&g.extend_vars(n + 1, order))),
    );
    let gb = ideal_groebner(&gens, n + 1, order, config)?;
    let kept: Vec<Polynomial> = gb
        .polys()
        .into_iter()
        .filter(|p| !p.involves_vars_from(n))
        .map(|p| p.restrict_vars(n, MonomialOrder::GRevLex))
        .collect();
    Ideal::new(n, kept)?.reduced(config)
}

/// `(J : f) = {g : g f ∈ J}`, computed as `(J ∩ (f)) / f`.
pub fn ideal_quotient(j: &Ideal, f: &Polynomial, config: &Limits) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = j.nvars;
    if f.is_constant() {
        return j.reduced(config);
    }
    let f = f.with_order(MonomialOrder::GRevLex);
    if f.is_monomial() && j.is_monomial() {
        let m = f.leading_monomial().unwrap();
        let one = f.leading_coeff().unwrap().field().one();
        let gens = j
            .gens
            .iter()
            .map(|g| {
                let lm = g.leading_monomial().unwrap();
                let q = m.lcm(&lm);
                Polynomial::term(
                    m.quotient_of(&q).unwrap(),
                    one.clone(),
                    n,
                    MonomialOrder::GRevLex,
                )
            })
            .collect();
        return Ideal::new(n, gens)?.reduced(config);
    }
    let principal = Ideal::new(n, vec![f.clone()])?;
    let meet = ideal_intersection(j, &principal, config)?;
    let gens = meet
        .gens
        .iter()
        .map(|g| {
            g.exact_div(&f)
                .ok_or_else(|| Error::Shape("intersection with (f) not divisible by f".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(n, gens)?.reduced(config)
}

/// `⋂_{g} (I : g)`, the preimage in `S` of the annihilator of `(g_1, ...)` in `S/I`.
pub fn annihilator_of_ideal_mod(gens: &[Polynomial], i: &Ideal, config: &Limits) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    if gens.is_empty() {
        return Err(Error::EmptyList);
    }
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let q = ideal_quotient(i, g, config)?;
        acc = Some(match acc {
            None => q,
            Some(a) => ideal_intersection(&a, &q, config)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        // every generator is zero: the annihilator is the whole ring
        None => {
            let field = i
                .gens
                .first()
                .map(|g| g.leading_coeff().unwrap().field())
                .ok_or(Error::EmptyList)?;
            Ideal::new(
                i.nvars,
                vec![Polynomial::constant(
                    field.one(),
                    i.nvars,
                    MonomialOrder::GRevLex,
                )],
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing};

    fn ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(vars, FieldSpec::Rational, MonomialOrder::GRevLex).unwrap()
    }

    fn ideal(r: &PolyRing, gens: &[&str]) -> Ideal {
        Ideal::new(
            r.nvars(),
            gens.iter().map(|t| r.parse(t).unwrap()).collect(),
        )
        .unwrap()
    }

    fn cfg() -> Limits {
        Limits::default()
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"]);
        let j = ideal(&r, &["x^2", "x*y"]);
        assert!(!ideal_membership(&r.parse("x").unwrap(), &j, &cfg()).unwrap());
        assert!(ideal_membership(&r.zero(), &j, &cfg()).unwrap());
        let s = ring(&["a", "b", "c", "d", "e"]);
        assert!(
            ideal_membership(&s.parse("ade-bce").unwrap(), &ideal(&s, &["e"]), &cfg()).unwrap()
        );
    }

    /// Powers of `f` up to `n` tested by plain membership.
    fn some_power_in(f: &Polynomial, j: &Ideal, n: u32) -> bool {
        (1..=n).any(|k| ideal_membership(&f.pow(k), j, &cfg()).unwrap())
    }

    #[test]
    fn radical_membership_matches_powers() {
        let s = ring(&["a", "b", "c", "d", "e"]);
        let j = ideal(&s, &["ade-bce"]);
        for f in ["ad-bc", "e", "e*(ad-bc)", "a+e"] {
            let f = s.parse(f).unwrap();
            assert_eq!(
                radical_membership(&f, &j, &cfg()).unwrap(),
                some_power_in(&f, &j, 4)
            );
        }
        let r = ring(&["x", "y"]);
        let j = ideal(&r, &["x^2", "x*y"]);
        assert!(radical_membership(&r.parse("x").unwrap(), &j, &cfg()).unwrap());
        assert!(!radical_membership(&r.parse("y").unwrap(), &j, &cfg()).unwrap());
        // (x + y)^3 = x^3 + 3x^2y + 3xy^2 + y^3 is not in j, and no power is
        let f = r.parse("x+y").unwrap();
        assert!(!radical_membership(&f, &j, &cfg()).unwrap());
    }

    #[test]
    fn monomial_shortcut_agrees_with_rabinowitsch() {
        let r = ring(&["x", "y", "z"]);
        let j = ideal(&r, &["x^2*y", "y*z^3", "x*z"]);
        // same ideal, hidden behind a non-monomial generating set
        let hidden = ideal(&r, &["x^2*y + x*z", "y*z^3", "x*z"]);
        for f in ["x*y", "y*z", "x", "z^2", "x*y*z", "y"] {
            let f = r.parse(f).unwrap();
            assert_eq!(
                radical_membership(&f, &j, &cfg()).unwrap(),
                radical_membership(&f, &hidden, &cfg()).unwrap()
            );
        }
    }

    #[test]
    fn intersections() {
        let s = ring(&["a", "b", "c", "d", "e"]);
        let meet = ideal_intersection(&ideal(&s, &["e"]), &ideal(&s, &["ad-bc"]), &cfg()).unwrap();
        assert!(meet.same_ideal(&ideal(&s, &["ade-bce"]), &cfg()).unwrap());
        let r = ring(&["x", "y"]);
        let meet = ideal_intersection(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &cfg()).unwrap();
        assert_eq!(meet.gens(), &[r.parse("x*y").unwrap()]);
        let j = ideal(&r, &["x^2+y^2", "x*y"]);
        assert!(ideal_intersection(&j, &j, &cfg())
            .unwrap()
            .same_ideal(&j, &cfg())
            .unwrap());
    }

    #[test]
    fn monomial_intersection_agrees_with_elimination() {
        let r = ring(&["x", "y", "z"]);
        let j = ideal(&r, &["x^2", "y*z"]);
        let k = ideal(&r, &["x*y", "z^2"]);
        let fast = ideal_intersection(&j, &k, &cfg()).unwrap();
        // disguise j with a unimodular change of generators to force elimination
        let j2 = ideal(&r, &["x^2 + y*z", "y*z"]);
        let slow = ideal_intersection(&j2, &k, &cfg()).unwrap();
        assert!(fast.same_ideal(&slow, &cfg()).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(&["x"]);
        let q = ideal_quotient(&ideal(&r, &["x^2"]), &r.parse("x").unwrap(), &cfg()).unwrap();
        assert_eq!(q.gens(), &[r.parse("x").unwrap()]);
        let s = ring(&["x", "y", "z"]);
        let j = ideal(&s, &["x^2 + y*z", "x*y"]);
        let q = ideal_quotient(&j, &r_one(&s), &cfg()).unwrap();
        assert!(q.same_ideal(&j, &cfg()).unwrap());
        let yz = ideal(&s, &["y*z"]);
        let q = ideal_quotient(&yz, &s.parse("y").unwrap(), &cfg()).unwrap();
        assert_eq!(q.gens(), &[s.parse("z").unwrap()]);
        assert_eq!(
            ideal_quotient(&yz, &s.zero(), &cfg()),
            Err(Error::DivisionByZero)
        );
    }

    fn r_one(r: &PolyRing) -> Polynomial {
        r.one()
    }

    #[test]
    fn colon_by_elimination_matches_monomial_rule() {
        let s = ring(&["x", "y", "z"]);
        let j = ideal(&s, &["x^2*y", "y*z^2", "x*z^3"]);
        let f = s.parse("x*z").unwrap();
        let fast = ideal_quotient(&j, &f, &cfg()).unwrap();
        let disguised = ideal(&s, &["x^2*y + y*z^2", "y*z^2", "x*z^3"]);
        let slow = ideal_quotient(&disguised, &f, &cfg()).unwrap();
        assert!(fast.same_ideal(&slow, &cfg()).unwrap());
    }

    #[test]
    fn annihilators() {
        let s = ring(&["x", "y", "z"]);
        let i = ideal(&s, &["y*z"]);
        let ann = annihilator_of_ideal_mod(&[s.parse("y").unwrap()], &i, &cfg()).unwrap();
        assert!(ann.same_ideal(&ideal(&s, &["z"]), &cfg()).unwrap());
        let ann = annihilator_of_ideal_mod(&[s.one()], &i, &cfg()).unwrap();
        assert!(ann.same_ideal(&i, &cfg()).unwrap());
        assert_eq!(
            annihilator_of_ideal_mod(&[], &i, &cfg()),
            Err(Error::EmptyList)
        );
    }
}

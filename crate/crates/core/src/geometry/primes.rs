use serde::{Deserialize, Serialize};

use super::dimension::{krull_dim, monomial_supports, Dimension};
use super::support::SupportHandle;
use crate::error::{Error, Result};
use crate::groebner::{
    ideal_intersection, ideal_membership, radical_membership, Ideal, Limits, QuotientRing,
};
use crate::ring::{Monomial, MonomialOrder, Polynomial};

/// Where a list of minimal primes came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeProvenance {
    /// Minimal vertex covers of a monomial ideal; primality is certain.
    ComputedMonomial,
    /// Declared by the user; containment, covering and incomparability were
    /// checked, primality is trusted.
    DeclaredVerified,
    /// Declared by the user and not checked.
    DeclaredUnverified,
}

/// The minimal primes of `R`, as ideals of `S`.
#[derive(Clone, Debug)]
pub struct PrimeList {
    pub primes: Vec<Ideal>,
    pub provenance: PrimeProvenance,
}

impl PrimeList {
    /// Whether primality of every entry is known rather than trusted.
    pub fn primality_certified(&self) -> bool {
        self.provenance == PrimeProvenance::ComputedMonomial
    }

    /// Whether covering and incomparability have been machine-checked.
    pub fn is_checked(&self) -> bool {
        self.provenance != PrimeProvenance::DeclaredUnverified
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

fn variable_ideal(mask: u32, nvars: usize, field: crate::ring::FieldSpec) -> Ideal {
    let gens = (0..nvars)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| Polynomial::term(Monomial::var(i), field.one(), nvars, MonomialOrder::GRevLex))
        .collect();
    Ideal::new(nvars, gens).expect("variables of the ring")
}

/// Minimal primes of `S/J` for a monomial ideal `J`: the ideals generated
/// by the minimal sets of variables meeting the support of every generator.
pub fn minimal_primes_monomial(j: &Ideal, field: crate::ring::FieldSpec) -> Result<PrimeList> {
    let n = j.nvars();
    let supports = monomial_supports(j)?;
    let mut covers: Vec<u32> = Vec::new();
    if !supports.contains(&0) {
        let mut all: Vec<u32> = (0u32..1 << n)
            .filter(|s| supports.iter().all(|g| g & s != 0))
            .collect();
        all.sort_by_key(|s| s.count_ones());
        for s in all {
            if !covers.iter().any(|c| c & !s == 0) {
                covers.push(s);
            }
        }
    }
    covers.sort_by_key(|s| (s.count_ones(), *s));
    Ok(PrimeList {
        primes: covers
            .into_iter()
            .map(|s| variable_ideal(s, n, field))
            .collect(),
        provenance: PrimeProvenance::ComputedMonomial,
    })
}

/// Checks the declared minimal primes of `ring`: each contains `I`, their
/// intersection has the radical of `I`, and no one contains another.
pub fn verify_declared_min_primes(ring: &QuotientRing) -> Result<PrimeList> {
    let declared = ring
        .spec()
        .declared_min_primes
        .as_ref()
        .ok_or_else(|| Error::Instance("no declared minimal primes".into()))?;
    let cfg = ring.config();
    let n = ring.nvars();
    let names = ring.variables();
    let primes: Vec<Ideal> = declared
        .iter()
        .map(|p| Ideal::new(n, p.clone()))
        .collect::<Result<_>>()?;
    if primes.is_empty() {
        return Err(Error::DeclaredPrimes {
            prime: None,
            check: "covering",
            detail: "the list is empty".into(),
        });
    }
    // (1) I ⊆ p
    for (k, p) in primes.iter().enumerate() {
        let gb = p.groebner(cfg)?;
        if gb.is_unit_ideal() {
            return Err(Error::DeclaredPrimes {
                prime: Some(k),
                check: "containment",
                detail: format!("prime #{k} {} is the unit ideal", p.format(names)),
            });
        }
        if let Some(g) = ring.ideal().gens().iter().find(|g| !gb.contains_poly(g)) {
            return Err(Error::DeclaredPrimes {
                prime: Some(k),
                check: "containment",
                detail: format!(
                    "{} is not in prime #{k} {}",
                    g.display(names),
                    p.format(names)
                ),
            });
        }
    }
    // (2) √(∩ p) = √I; I ⊆ ∩ p already holds by (1)
    let mut meet = primes[0].clone();
    for p in &primes[1..] {
        meet = ideal_intersection(&meet, p, cfg)?;
    }
    for g in meet.gens() {
        if !radical_membership(g, ring.ideal(), cfg)? {
            return Err(Error::DeclaredPrimes {
                prime: None,
                check: "covering",
                detail: format!(
                    "{} lies in every declared prime but not in the radical of I",
                    g.display(names)
                ),
            });
        }
    }
    // (3) pairwise incomparable
    for (a, p) in primes.iter().enumerate() {
        for (b, q) in primes.iter().enumerate() {
            if a != b && q.contains_ideal(p, cfg)? {
                return Err(Error::DeclaredPrimes {
                    prime: Some(a),
                    check: "incomparability",
                    detail: format!(
                        "prime #{a} {} is contained in prime #{b} {}",
                        p.format(names),
                        q.format(names)
                    ),
                });
            }
        }
    }
    Ok(PrimeList {
        primes,
        provenance: PrimeProvenance::DeclaredVerified,
    })
}

/// The minimal primes of `R`: verified declared primes when present, else
/// computed for a monomial `I`, else `None`.
pub fn ring_min_primes(ring: &QuotientRing) -> Result<Option<PrimeList>> {
    if ring.spec().declared_min_primes.is_some() {
        return verify_declared_min_primes(ring).map(Some);
    }
    if ring.ideal().is_monomial() {
        return minimal_primes_monomial(ring.ideal(), ring.field()).map(Some);
    }
    Ok(None)
}

fn finite_dim(j: &Ideal, cfg: &Limits) -> Result<usize> {
    match krull_dim(j, cfg)? {
        Dimension::Finite(d) => Ok(d),
        Dimension::Empty => Err(Error::InconsistentPrimes(
            "a prime is the unit ideal".into(),
        )),
    }
}

/// `ht(p) = max (dim S/q - dim S/p)` over the minimal primes `q ⊆ p`.
pub fn height(p: &Ideal, minn: &PrimeList, cfg: &Limits) -> Result<usize> {
    let dp = finite_dim(p, cfg)?;
    let mut best: Option<usize> = None;
    for q in &minn.primes {
        if p.contains_ideal(q, cfg)? {
            let dq = finite_dim(q, cfg)?;
            let h = dq.checked_sub(dp).ok_or_else(|| {
                Error::InconsistentPrimes(
                    "a minimal prime below p has smaller dimension than p".into(),
                )
            })?;
            best = Some(best.map_or(h, |b| b.max(h)));
        }
    }
    best.ok_or_else(|| {
        Error::InconsistentPrimes("no listed minimal prime is contained in p".into())
    })
}

/// Outcome of comparing a support with the components of `Spec R` it meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    /// `supp(M)` is exactly the union of the touched components.
    pub holds: bool,
    /// Indices into the prime list of the components contained in `supp(M)`.
    pub touched: Vec<usize>,
}

/// The minimal primes `p` with `p ∈ supp(M)`, and whether `supp(M)` is the
/// union of their closures.
pub fn min_primes_containment_check(m: &SupportHandle, minn: &PrimeList) -> Result<Containment> {
    if m.is_empty() {
        return Ok(Containment {
            holds: true,
            touched: Vec::new(),
        });
    }
    let cfg = m.ring().config();
    let mut touched = Vec::new();
    for (k, p) in minn.primes.iter().enumerate() {
        let mut inside = true;
        for g in m.extra() {
            if !ideal_membership(g, p, cfg)? && !radical_membership(g, p, cfg)? {
                inside = false;
                break;
            }
        }
        if inside {
            touched.push(k);
        }
    }
    if touched.is_empty() {
        // a nonempty support meeting no component, e.g. a module of finite
        // length over a ring of positive dimension
        return Ok(Containment {
            holds: false,
            touched,
        });
    }
    let mut meet = minn.primes[touched[0]].clone();
    for &k in &touched[1..] {
        meet = ideal_intersection(&meet, &minn.primes[k], cfg)?;
    }
    let mut holds = true;
    for g in meet.gens() {
        if !m.radical_contains(g)? {
            holds = false;
            break;
        }
    }
    Ok(Containment { holds, touched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing, QuotientRingSpec};
    use std::sync::Arc;

    fn qring(vars: &[&str], ideal: &[&str], declared: Option<&[&[&str]]>) -> Arc<QuotientRing> {
        let mut spec = QuotientRingSpec::parse(vars, FieldSpec::Rational, ideal).unwrap();
        if let Some(d) = declared {
            spec = spec.with_declared_primes(d).unwrap();
        }
        Arc::new(QuotientRing::new(spec, Limits::default()).unwrap())
    }

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let r = PolyRing::new(vars, FieldSpec::Rational, MonomialOrder::GRevLex).unwrap();
        Ideal::new(
            r.nvars(),
            gens.iter().map(|t| r.parse(t).unwrap()).collect(),
        )
        .unwrap()
    }

    fn same(a: &PrimeList, b: &[Ideal]) -> bool {
        let c = Limits::default();
        a.len() == b.len()
            && a.primes
                .iter()
                .zip(b)
                .all(|(p, q)| p.same_ideal(q, &c).unwrap())
    }

    #[test]
    fn monomial_minimal_primes() {
        let q = FieldSpec::Rational;
        let xy = ["x", "y"];
        let xyz = ["x", "y", "z"];
        let l = minimal_primes_monomial(&ideal(&xy, &["x^2", "x*y"]), q).unwrap();
        assert!(same(&l, &[ideal(&xy, &["x"])]));
        let l = minimal_primes_monomial(&ideal(&xyz, &["y*z"]), q).unwrap();
        assert!(same(&l, &[ideal(&xyz, &["y"]), ideal(&xyz, &["z"])]));
        let l = minimal_primes_monomial(&ideal(&xyz, &["x*y", "x*z", "y*z"]), q).unwrap();
        assert!(same(
            &l,
            &[
                ideal(&xyz, &["x", "y"]),
                ideal(&xyz, &["x", "z"]),
                ideal(&xyz, &["y", "z"])
            ]
        ));
        let l = minimal_primes_monomial(&ideal(&xy, &[]), q).unwrap();
        assert!(same(&l, &[Ideal::zero(2)]));
        assert!(minimal_primes_monomial(&ideal(&xy, &["1"]), q)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn declared_primes_of_the_matrix_factorization_ring() {
        let v = ["a", "b", "c", "d", "e"];
        let r = qring(&v, &["a*d*e - b*c*e"], Some(&[&["e"], &["a*d - b*c"]]));
        let l = verify_declared_min_primes(&r).unwrap();
        assert_eq!(l.provenance, PrimeProvenance::DeclaredVerified);
        let meet = ideal_intersection(&l.primes[0], &l.primes[1], r.config()).unwrap();
        assert!(meet.same_ideal(r.ideal(), r.config()).unwrap());

        let r = qring(&v, &["a*d*e - b*c*e"], Some(&[&["e"]]));
        let err = verify_declared_min_primes(&r).unwrap_err();
        assert!(matches!(
            err,
            Error::DeclaredPrimes {
                check: "covering",
                prime: None,
                ..
            }
        ));

        let r = qring(
            &v,
            &["a*d*e - b*c*e"],
            Some(&[&["e"], &["a*d - b*c"], &["e", "a"]]),
        );
        let err = verify_declared_min_primes(&r).unwrap_err();
        assert!(matches!(
            err,
            Error::DeclaredPrimes {
                check: "incomparability",
                prime: Some(0),
                ..
            }
        ));

        let r = qring(
            &v,
            &["a*d*e - b*c*e"],
            Some(&[&["a"], &["e"], &["a*d - b*c"]]),
        );
        let err = verify_declared_min_primes(&r).unwrap_err();
        assert!(matches!(
            err,
            Error::DeclaredPrimes {
                check: "containment",
                prime: Some(0),
                ..
            }
        ));
    }

    #[test]
    fn declared_agrees_with_monomial_route() {
        let r = qring(&["x", "y"], &["x^2", "x*y"], Some(&[&["x"]]));
        let declared = verify_declared_min_primes(&r).unwrap();
        let computed = minimal_primes_monomial(r.ideal(), r.field()).unwrap();
        assert!(same(&declared, &computed.primes));
    }

    #[test]
    fn heights() {
        let r = qring(&["x", "y", "z"], &["y*z"], None);
        let minn = ring_min_primes(&r).unwrap().unwrap();
        let c = r.config();
        let xyz = ["x", "y", "z"];
        assert_eq!(height(&ideal(&xyz, &["x", "z"]), &minn, c).unwrap(), 1);
        assert_eq!(height(&ideal(&xyz, &["x", "y", "z"]), &minn, c).unwrap(), 2);
        assert_eq!(height(&ideal(&xyz, &["y"]), &minn, c).unwrap(), 0);
        assert!(matches!(
            height(&ideal(&xyz, &["x"]), &minn, c),
            Err(Error::InconsistentPrimes(_))
        ));
    }

    #[test]
    fn containment() {
        let r = qring(&["x", "y"], &["x^2", "x*y"], None);
        let minn = ring_min_primes(&r).unwrap().unwrap();
        let full = SupportHandle::full(&r);
        assert_eq!(
            min_primes_containment_check(&full, &minn).unwrap(),
            Containment {
                holds: true,
                touched: vec![0]
            }
        );
        let point = SupportHandle::of_cyclic(&r, &[r.parse("y").unwrap()]);
        // V(x, y) is the closed point, which contains no component
        assert_eq!(
            min_primes_containment_check(&point, &minn).unwrap(),
            Containment {
                holds: false,
                touched: vec![]
            }
        );

        let v = ["a", "b", "c", "d", "e"];
        let r = qring(&v, &["a*d*e - b*c*e"], Some(&[&["e"], &["a*d - b*c"]]));
        let minn = ring_min_primes(&r).unwrap().unwrap();
        let even = SupportHandle::of_cyclic(&r, &[r.parse("a*d - b*c").unwrap()]);
        assert_eq!(
            min_primes_containment_check(&even, &minn).unwrap(),
            Containment {
                holds: true,
                touched: vec![1]
            }
        );
    }
}

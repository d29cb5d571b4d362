use crate::error::{Error, Result};
use crate::groebner::{Ideal, QuotientRing};
use crate::resolution::{GradedMatrix, ModulePresentation};
use crate::ring::{MonomialOrder, Polynomial};

/// `binomial(n, k)`, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Determinant of a square matrix over `S` by fraction-free elimination.
pub fn determinant(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    assert!(
        a.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    let nvars = a[0][0].nvars();
    let order = a[0][0].order();
    let mut negate = false;
    let mut prev: Option<Polynomial> = None;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Polynomial::zero(nvars, order);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = match &prev {
                    Some(d) => num
                        .exact_div(d)
                        .expect("fraction-free elimination divides exactly"),
                    None => num,
                };
            }
        }
        prev = Some(a[k][k].clone());
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Maximal minors of `m` reduced modulo `I`, monic and without repeats.
/// `[1]` for the zero module, empty when `Fitt_0` is zero in `R`.
pub(crate) fn fitting_minors(ring: &QuotientRing, m: &GradedMatrix) -> Result<Vec<Polynomial>> {
    let r = m.nrows();
    let c = m.ncols();
    if r == 0 {
        return Ok(vec![ring.one()]);
    }
    if c < r {
        return Ok(Vec::new());
    }
    let count = binomial(c, r);
    let cap = ring.config().minor_cap;
    if count > cap as u128 {
        return Err(Error::LimitExceeded {
            cap: "minor_cap",
            limit: cap,
            context: format!(
                "taking the {r}x{r} minors of a {r}x{c} presentation ({count} minors)"
            ),
        });
    }
    let mut out: Vec<Polynomial> = Vec::new();
    let mut pick: Vec<usize> = (0..r).collect();
    loop {
        let sub: Vec<Vec<Polynomial>> = (0..r)
            .map(|i| pick.iter().map(|&j| m.entry(i, j).clone()).collect())
            .collect();
        let d = ring.reduce(&determinant(sub));
        if !d.is_zero() {
            let d = d.monic();
            if d.is_constant() {
                return Ok(vec![ring.one()]);
            }
            if !out.contains(&d) {
                out.push(d);
            }
        }
        // next r-subset of 0..c in lexicographic order
        let Some(i) = (0..r).rev().find(|&i| pick[i] < c - r + i) else {
            break;
        };
        pick[i] += 1;
        for k in i + 1..r {
            pick[k] = pick[k - 1] + 1;
        }
    }
    Ok(out)
}

/// `Fitt_0(M)` lifted to `S`: the maximal minors of the presentation plus
/// the generators of `I`. Only `I` when the presentation has fewer columns
/// than rows.
pub fn fitting_ideal_0(m: &ModulePresentation) -> Result<Ideal> {
    let ring = m.ring();
    let mut gens: Vec<Polynomial> = ring.ideal().gens().to_vec();
    gens.extend(fitting_minors(ring, m.matrix())?);
    let gens = gens
        .into_iter()
        .map(|g| g.with_order(MonomialOrder::GRevLex))
        .collect();
    Ideal::new(ring.nvars(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Limits;
    use crate::ring::{FieldSpec, PolyRing, QuotientRingSpec};
    use std::sync::Arc;

    fn ring(vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let spec = QuotientRingSpec::parse(vars, FieldSpec::Rational, ideal).unwrap();
        Arc::new(QuotientRing::new(spec, Limits::default()).unwrap())
    }

    fn rows(r: &QuotientRing, rows: &[&[&str]]) -> Vec<Vec<Polynomial>> {
        rows.iter()
            .map(|row| row.iter().map(|t| r.parse(t).unwrap()).collect())
            .collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(34, 21), 927_983_760);
        assert_eq!(binomial(400, 200), u128::MAX);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let s = PolyRing::new(
            &["a", "b", "c", "d", "e"],
            FieldSpec::Rational,
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let p = |t: &str| s.parse(t).unwrap();
        let m = vec![
            vec![p("a"), p("b"), p("0")],
            vec![p("c"), p("d"), p("e")],
            vec![p("0"), p("e"), p("a")],
        ];
        // a(da - e^2) - b(ca)
        let expected = p("a^2*d - a*e^2 - a*b*c");
        assert_eq!(determinant(m), expected);
        // a zero leading entry forces a row swap
        let m = vec![vec![p("0"), p("a")], vec![p("b"), p("c")]];
        assert_eq!(determinant(m), p("-a*b"));
    }

    #[test]
    fn principal_and_free() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let m = ModulePresentation::from_rows(r.clone(), rows(&r, &[&["y"]]), None).unwrap();
        let f = fitting_ideal_0(&m).unwrap();
        let p = |t: &str| r.spec().parse_poly(t).unwrap();
        let expected = Ideal::new(2, vec![p("y"), p("x^2")]).unwrap();
        assert!(f.same_ideal(&expected, r.config()).unwrap());
        let free = ModulePresentation::free(r.clone(), vec![0]);
        assert!(fitting_ideal_0(&free)
            .unwrap()
            .same_ideal(r.ideal(), r.config())
            .unwrap());
    }

    #[test]
    fn matrix_factorization_even_syzygy() {
        let r = ring(&["a", "b", "c", "d", "e"], &["a*d*e - b*c*e"]);
        let m =
            ModulePresentation::from_rows(r.clone(), rows(&r, &[&["a", "b"], &["c", "d"]]), None)
                .unwrap();
        let f = fitting_ideal_0(&m).unwrap();
        let expected = Ideal::new(5, vec![r.spec().parse_poly("a*d - b*c").unwrap()]).unwrap();
        assert!(f.same_ideal(&expected, r.config()).unwrap());
        let odd = ModulePresentation::from_rows(
            r.clone(),
            rows(&r, &[&["d*e", "-b*e"], &["-c*e", "a*e"]]),
            None,
        )
        .unwrap();
        // e^2 (ad - bc) lies in I
        assert!(fitting_minors(&r, odd.matrix()).unwrap().is_empty());
    }

    #[test]
    fn minor_cap_is_a_hard_failure() {
        let spec = QuotientRingSpec::parse(&["x", "y"], FieldSpec::Rational, &[]).unwrap();
        let limits = Limits {
            minor_cap: 2,
            ..Limits::default()
        };
        let r = Arc::new(QuotientRing::new(spec, limits).unwrap());
        let m =
            ModulePresentation::from_rows(r.clone(), rows(&r, &[&["x", "y", "x"]]), None).unwrap();
        let err = fitting_ideal_0(&m).unwrap_err();
        assert!(matches!(
            err,
            Error::LimitExceeded {
                cap: "minor_cap",
                ..
            }
        ));
    }
}

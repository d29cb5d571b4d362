use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Hard ceiling on the number of variables, including the auxiliary
/// variables introduced by elimination.
pub const MAX_VARS: usize = 16;

/// Dense exponent vector. Unused slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.degree += e;
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        m.degree += other.degree;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.degree -= self.degree;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.degree += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support() & other.support() == 0
    }

    /// Product of the variables occurring in `self`.
    pub fn squarefree(&self) -> Monomial {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                m.exps[i] = 1;
                m.degree += 1;
            }
        }
        m
    }

    pub(crate) fn block_degree(&self, lo: usize, hi: usize) -> u32 {
        self.exps[lo..hi].iter().map(|&e| e as u32).sum()
    }

    /// Formats with the given variable names, `1` for the empty product.
    pub fn display<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "t{i}")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Global monomial orders.
///
/// `Elimination(k)` treats the variables with index `>= k` as a block that
/// dominates: it compares their graded-reverse-lexicographic part first and
/// breaks ties with grevlex on the first `k` variables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    GRevLex,
    Lex,
    Elimination(u8),
}

fn grevlex_block(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da = a.block_degree(lo, hi);
    let db = b.block_degree(lo, hi);
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            // smaller exponent in the last differing variable wins
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GRevLex => {
                if a.degree != b.degree {
                    return a.degree.cmp(&b.degree);
                }
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = k as usize;
                grevlex_block(a, b, k, MAX_VARS).then_with(|| grevlex_block(a, b, 0, k))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GRevLex;
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&x.mul(&z), &y.mul(&y)), Ordering::Less);
        assert_eq!(o.cmp(&Monomial::one(), &z), Ordering::Less);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        assert_eq!(o.cmp(&x, &y.mul(&y).mul(&y)), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block() {
        let o = MonomialOrder::Elimination(2);
        let t = Monomial::var(2);
        let x = Monomial::var(0);
        assert_eq!(o.cmp(&t, &x.mul(&x).mul(&x)), Ordering::Greater);
    }

    #[test]
    fn quotient_and_lcm() {
        let a = Monomial::from_exponents(&[2, 1, 0]);
        let b = Monomial::from_exponents(&[1, 3, 1]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[2, 3, 1]));
        assert_eq!(
            a.quotient_of(&a.lcm(&b)),
            Some(Monomial::from_exponents(&[0, 2, 1]))
        );
        assert!(!a.divides(&b));
    }
}

//! proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::ring::{FieldSpec, Monomial, MonomialOrder, Polynomial};

pub const SMALL_PRIME: u32 = 101;

pub fn monomial(nvars: usize, degree: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..nvars, degree as usize).prop_map(move |picks| {
        let mut e = vec![0u32; nvars];
        for i in picks {
            e[i] += 1;
        }
        Monomial::from_exponents(&e)
    })
}

/// Homogeneous polynomial of the given degree with up to `terms` terms.
pub fn form(
    nvars: usize,
    degree: u32,
    terms: usize,
    field: FieldSpec,
) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(nvars, degree), -3i64..=3), 1..=terms).prop_map(move |ts| {
        Polynomial::from_terms(
            nvars,
            MonomialOrder::GRevLex,
            ts.into_iter().map(|(m, c)| (m, field.from_i64(c))),
        )
    })
}

/// Polynomial with terms of degree at most `max_degree`.
pub fn poly(
    nvars: usize,
    max_degree: u32,
    terms: usize,
    field: FieldSpec,
) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((0..=max_degree, -4i64..=4), 0..=terms)
        .prop_flat_map(move |shape| {
            shape
                .into_iter()
                .map(|(d, c)| monomial(nvars, d).prop_map(move |m| (m, c)))
                .collect::<Vec<_>>()
        })
        .prop_map(move |ts| {
            Polynomial::from_terms(
                nvars,
                MonomialOrder::GRevLex,
                ts.into_iter().map(|(m, c)| (m, field.from_i64(c))),
            )
        })
}

pub fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rational),
        Just(FieldSpec::Prime(SMALL_PRIME))
    ]
}

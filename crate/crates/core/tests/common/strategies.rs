//! Random ring elements: exponents in [-6, 6], at most 8 terms.

use proptest::prelude::*;
use qhomfly::{LaurentPoly, QScalar};

pub fn poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -6i32..=6, -2i32..=2, -20i64..=20), 0..=max_terms).prop_map(|ts| {
        ts.into_iter()
            .fold(LaurentPoly::zero(), |acc, (a, q, s, c)| acc + LaurentPoly::mono(c, a, q, s))
    })
}

pub fn nonzero_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn scalar() -> impl Strategy<Value = QScalar> {
    (poly(8), prop::collection::vec((1u32..=4, 1u32..=2), 0..=2))
        .prop_map(|(num, den)| QScalar::new(num, den))
}

pub fn unit() -> impl Strategy<Value = LaurentPoly> {
    (-5i32..=5, -5i32..=5, -3i32..=3, prop::bool::ANY)
        .prop_map(|(a, q, s, neg)| LaurentPoly::mono(if neg { -1 } else { 1 }, a, q, s))
}

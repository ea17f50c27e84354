#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qfischer::{Bidegree, Context, Monomial, Poly, Scalar};

pub fn ctx(p: usize) -> Context {
    Context::new(p).unwrap()
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(re, im)| Scalar::new(re, im))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !num_traits::Zero::is_zero(s))
}

/// Exponent vector of length `n` with total `deg`, spread by the draws.
fn spread(n: usize, deg: u32, draws: &[usize]) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for d in draws.iter().take(deg as usize) {
        e[d % n] += 1;
    }
    e
}

pub fn monomial(c: Context, bd: Bidegree) -> impl Strategy<Value = Monomial> {
    let n = c.nvars();
    proptest::collection::vec(any::<usize>(), (bd.a + bd.b) as usize).prop_map(move |draws| {
        Monomial::from_exponents(spread(n, bd.a, &draws), spread(n, bd.b, &draws[bd.a as usize..]))
    })
}

pub fn homogeneous(c: Context, bd: Bidegree, max_terms: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((monomial(c, bd), scalar()), 1..=max_terms)
        .prop_map(move |terms| Poly::from_terms(c, terms))
}

pub fn bidegree(max_total: u32) -> impl Strategy<Value = Bidegree> {
    (0..=max_total).prop_flat_map(|t| (0..=t).prop_map(move |a| Bidegree::new(a, t - a)))
}

/// Mixed-degree polynomial of total degree at most `max_total`.
pub fn poly(c: Context, max_total: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(bidegree(max_total).prop_flat_map(move |bd| (monomial(c, bd), scalar())), 0..=max_terms)
        .prop_map(move |terms| Poly::from_terms(c, terms))
}

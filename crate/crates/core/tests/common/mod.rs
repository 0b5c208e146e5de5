#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use tame_core::scalars::{exp_symbol, rational, Rational};
use tame_core::{Derivation, Poly2, Scalar};

pub const SEED: u64 = 0x5eed_0001;

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn x() -> Poly2 {
    Poly2::x()
}
pub fn y() -> Poly2 {
    Poly2::y()
}
pub fn c(n: i64) -> Poly2 {
    Poly2::constant(Scalar::from_int(n))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rational(n, d))
}

/// Sums of at most three terms `q·E(p)` with small rational `p`, `q`.
pub fn exp_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((small_rational(), -3i64..=3, 1i64..=2), 0..3).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (q, e, d)| {
            acc.add(&Scalar::from_rational(q).mul(&exp_symbol(rational(e, d))))
        })
    })
}

/// Quotients of two exponential polynomials.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (exp_poly(), exp_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n.try_div(&d).unwrap() })
}

pub fn rational_scalar() -> impl Strategy<Value = Scalar> {
    small_rational().prop_map(Scalar::from_rational)
}

/// Polynomials of total degree at most `deg` with up to `terms` terms.
pub fn poly_with(deg: u32, terms: usize, coeff: BoxedStrategy<Scalar>) -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0..=deg, 0..=deg, coeff), 0..=terms).prop_map(move |ts| {
        ts.into_iter()
            .filter(|(i, j, _)| i + j <= deg)
            .fold(Poly2::zero(), |acc, (i, j, s)| acc.add(&Poly2::term(tame_core::Monomial::new(i, j), s)))
    })
}

pub fn poly() -> impl Strategy<Value = Poly2> {
    poly_with(3, 4, rational_scalar().boxed())
}

pub fn derivation() -> impl Strategy<Value = Derivation> {
    (poly_with(2, 3, rational_scalar().boxed()), poly_with(2, 3, rational_scalar().boxed()))
        .prop_map(|(a, b)| Derivation::new(a, b))
}

/// The derivations of the standard instance list, with a label each.
pub fn registry() -> Vec<(String, Derivation)> {
    let mut out = Vec::new();
    let q = |n: i64| c(n);
    for (name, f) in [
        ("f=1", q(1)),
        ("f=2X+3", q(2) * x() + q(3)),
        ("f=X^2", x().pow(2)),
        ("f=X^3", x().pow(3)),
        ("f=X^4+2X^2+1", x().pow(4) + q(2) * x().pow(2) + q(1)),
    ] {
        out.push((format!("triangular {name}"), Derivation::new(Poly2::zero(), f)));
    }
    for b in [0, 1, 2] {
        out.push((format!("flow b={b}"), Derivation::new(q(1), q(b) * y())));
    }
    for (a, m) in [(1i64, 1u32), (2, 3), (1, 4)] {
        out.push((format!("resonant a={a} m={m}"), Derivation::new(q(a) * x(), q(a * m as i64) * y() + x().pow(m))));
    }
    for (a, b) in [(1, 1), (2, 1), (3, 1), (1, 0), (0, 2)] {
        out.push((format!("diagonal a={a} b={b}"), Derivation::new(q(a) * x(), q(b) * y())));
    }
    for a in [1, 2] {
        out.push((format!("jordan-Y a={a}"), Derivation::new(q(a) * x() + y(), q(a) * y())));
        out.push((format!("jordan-1 a={a}"), Derivation::new(q(a) * x() + q(1), q(a) * y())));
    }
    out
}

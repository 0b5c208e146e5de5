//! parse(render(v)) = v on random values of each kind.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use tame::{parse, Kind, Value};
use tame_core::scalars::rational;
use tame_core::{exp_symbol, Derivation, Endomorphism, Monomial, Poly2, Scalar};

fn config() -> Config {
    Config { cases: 200, rng_seed: RngSeed::Fixed(0x5eed_0002), failure_persistence: None, ..Config::default() }
}

fn exp_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-7i64..=7, 1i64..=5, -4i64..=4, 1i64..=3), 0..3).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (n, d, e, f)| {
            acc.add(&Scalar::from_rational(rational(n, d)).mul(&exp_symbol(rational(e, f))))
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (exp_poly(), exp_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n.try_div(&d).unwrap() })
}

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..5, 0u32..5, scalar()), 0..5).prop_map(|ts| {
        ts.into_iter().fold(Poly2::zero(), |acc, (i, j, c)| acc.add(&Poly2::term(Monomial::new(i, j), c)))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn polynomials(p in poly()) {
        prop_assert_eq!(parse(&p.to_string(), Kind::Poly).unwrap(), Value::Poly(p));
    }

    #[test]
    fn derivations(a in poly(), b in poly()) {
        let d = Derivation::new(a, b);
        prop_assert_eq!(parse(&d.to_string(), Kind::Derivation).unwrap(), Value::Derivation(d));
    }

    #[test]
    fn endomorphisms(a in poly(), b in poly()) {
        let e = Endomorphism::new(a, b);
        prop_assert_eq!(parse(&e.to_string(), Kind::Endomorphism).unwrap(), Value::Endomorphism(e.clone()));
        let tuple = format!("({} ; {})", e.im_x, e.im_y);
        prop_assert_eq!(parse(&tuple, Kind::Endomorphism).unwrap(), Value::Endomorphism(e));
    }
}

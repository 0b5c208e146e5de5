//! Exponential, Jordan and commutant invariants on the standard instances.

mod common;

use common::*;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tame_core::commutant::{check_soundness, elementary_commutant_with_rng};
use tame_core::expmap::conjugation_identity_check;
use tame_core::jordan::certify;
use tame_core::operators::{commute_check, elementary_inverse, is_locally_nilpotent};
use tame_core::{
    contains, elementary_commutant, exp_derivation, exp_lnd, jordan_decompose, solution_set_equal, Caps, Derivation,
    ElementaryShape, Endomorphism, Operator, Scalar, ShapeKind,
};

fn caps() -> Caps {
    Caps::default()
}

const SHAPES: [ShapeKind; 2] = [ShapeKind::Rho, ShapeKind::Theta];

#[test]
fn exp_inverse_on_registry() {
    for (name, d) in registry() {
        let e = exp_derivation(&d, &caps()).unwrap();
        assert!(e.certificate.inverse_checked, "{name}");
        let inv = exp_derivation(&d.neg(), &caps()).unwrap().automorphism;
        assert!(Endomorphism::compose(&e.automorphism, &inv, &caps()).unwrap().is_identity(), "{name}");
    }
}

#[test]
fn lnd_exponential_agrees_with_general_path() {
    let mut lnd = 0;
    for (name, d) in registry() {
        if is_locally_nilpotent(&d, &caps()) {
            lnd += 1;
            let general = exp_derivation(&d, &caps()).unwrap();
            assert!(general.certificate.lnd_path_used, "{name}");
            assert_eq!(exp_lnd(&d, &caps()).unwrap(), general.automorphism, "{name}");
        } else {
            assert!(exp_lnd(&d, &caps()).is_err(), "{name}");
        }
    }
    // the five triangular forms and the translation flow
    assert_eq!(lnd, 6);
}

#[test]
fn jordan_certificates_on_registry() {
    for (name, d) in registry() {
        let pair = jordan_decompose(&d, &caps()).unwrap();
        assert!(certify(&d, &pair, &caps()).unwrap().all(), "{name}");
        // idempotence on each part
        let s = jordan_decompose(&pair.semisimple, &caps()).unwrap();
        assert_eq!(s.semisimple, pair.semisimple, "{name}");
        assert!(s.nilpotent.is_zero(), "{name}");
        let n = jordan_decompose(&pair.nilpotent, &caps()).unwrap();
        assert!(n.semisimple.is_zero(), "{name}");
    }
}

#[test]
fn resonant_split() {
    let d = Derivation::new(c(2) * x(), c(6) * y() + x().pow(3));
    let pair = jordan_decompose(&d, &caps()).unwrap();
    assert_eq!(pair.semisimple, Derivation::new(c(2) * x(), c(6) * y()));
    assert_eq!(pair.nilpotent, Derivation::new(tame_core::Poly2::zero(), x().pow(3)));
    assert!(certify(&d, &pair, &caps()).unwrap().all());
}

#[test]
fn exp_splits_along_jordan_pairs() {
    for (name, d) in registry() {
        let pair = jordan_decompose(&d, &caps()).unwrap();
        let es = exp_derivation(&pair.semisimple, &caps()).unwrap().automorphism;
        let en = exp_derivation(&pair.nilpotent, &caps()).unwrap().automorphism;
        let whole = exp_derivation(&d, &caps()).unwrap().automorphism;
        assert_eq!(Endomorphism::compose(&es, &en, &caps()).unwrap(), whole, "{name}");
        assert_eq!(Endomorphism::compose(&en, &es, &caps()).unwrap(), whole, "{name}");
    }
}

fn letter() -> impl Strategy<Value = Endomorphism> {
    let coeff = (-5i64..=5, 1i64..=5).prop_map(|(n, d)| Scalar::from_rational(tame_core::scalars::rational(n, d)));
    let unit = (1i64..=5, 1i64..=5, any::<bool>())
        .prop_map(|(n, d, neg)| Scalar::from_rational(tame_core::scalars::rational(if neg { -n } else { n }, d)));
    (any::<bool>(), unit, prop::collection::vec(coeff, 0..3)).prop_map(|(rho, u, poly)| {
        Endomorphism::elementary(if rho { ShapeKind::Rho } else { ShapeKind::Theta }, u, &poly)
    })
}

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn conjugation_identity(word in prop::collection::vec(letter(), 1..=3), idx in 0usize..24) {
        let forms = registry();
        let (_, d) = &forms[idx % forms.len()];
        let big = Caps { deg_cap: 256, dim_cap: 512 };
        prop_assert!(conjugation_identity_check(&word, d, &big).unwrap());
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn jordan_parts_are_conjugation_equivariant(phi in letter(), idx in 0usize..24) {
        let forms = registry();
        let (_, d) = &forms[idx % forms.len()];
        let big = Caps { deg_cap: 128, dim_cap: 256 };
        let inv = elementary_inverse(&phi).unwrap();
        let pair = jordan_decompose(d, &big).unwrap();
        let conj = jordan_decompose(&d.conjugate(&phi, &inv, &big).unwrap(), &big).unwrap();
        prop_assert_eq!(conj.semisimple, pair.semisimple.conjugate(&phi, &inv, &big).unwrap());
        prop_assert_eq!(conj.nilpotent, pair.nilpotent.conjugate(&phi, &inv, &big).unwrap());
    }
}

#[test]
fn commutants_agree_and_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, d) in registry() {
        let e = exp_derivation(&d, &caps()).unwrap().automorphism;
        for kind in SHAPES {
            let shape = ElementaryShape::new(kind, 8);
            let a = elementary_commutant(&Operator::Derivation(d.clone()), shape, &caps()).unwrap();
            let b = elementary_commutant(&Operator::Endomorphism(e.clone()), shape, &caps()).unwrap();
            assert!(a.is_complete() && b.is_complete(), "{name} {kind:?}");
            assert!(solution_set_equal(&a, &b).unwrap(), "{name} {kind:?}");
            // fresh samples with another seed
            check_soundness(&Operator::Derivation(d.clone()), &a, &caps(), &mut rng).unwrap();
            check_soundness(&Operator::Endomorphism(e.clone()), &b, &caps(), &mut rng).unwrap();
            for (comp, rank) in a.components.iter().zip(&a.rank_report) {
                assert_eq!(rank.dimension, comp.space.dim());
                assert_eq!(rank.dimension + rank.rank, rank.unknowns);
            }
        }
    }
}

#[test]
fn commutants_are_closed_under_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for (name, d) in registry() {
        let target = Operator::Derivation(d.clone());
        for kind in SHAPES {
            let set = elementary_commutant_with_rng(&target, ElementaryShape::new(kind, 8), &caps(), &mut rng).unwrap();
            let members: Vec<Endomorphism> = set
                .components
                .iter()
                .flat_map(|comp| comp.sample(&mut rng, 3))
                .map(|v| set.shape.endomorphism(&v))
                .collect();
            for f in &members {
                let inv = elementary_inverse(f).unwrap();
                assert!(contains(&set, &inv).unwrap(), "{name}: inverse of {f}");
                for g in &members {
                    let fg = Endomorphism::compose(f, g, &caps()).unwrap();
                    let ok = commute_check(&target, &Operator::Endomorphism(fg.clone()), &caps()).unwrap();
                    assert!(ok, "{name}: {fg}");
                    if fg.elementary_kind().is_some() {
                        assert!(contains(&set, &fg).unwrap(), "{name}: {fg}");
                    }
                }
            }
        }
    }
}

#[test]
fn degree_bound_stability() {
    for (name, d) in registry() {
        let target = Operator::Derivation(d);
        for kind in SHAPES {
            let small = elementary_commutant(&target, ElementaryShape::new(kind, 8), &caps()).unwrap();
            let big = elementary_commutant(&target, ElementaryShape::new(kind, 12), &caps()).unwrap();
            assert_eq!(big.restrict_degree(8), small, "{name} {kind:?}");
        }
    }
}

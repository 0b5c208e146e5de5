//! Algebraic laws of scalars, polynomials and operators on random inputs.

mod common;

use common::*;
use proptest::prelude::*;
use tame_core::operators::{commute_check, elementary_inverse, generator_subspace};
use tame_core::{Caps, Derivation, Endomorphism, Field, Operator, Poly2, Scalar, ShapeKind};

fn caps() -> Caps {
    Caps::default()
}

fn elementary() -> impl Strategy<Value = Endomorphism> {
    (
        any::<bool>(),
        small_rational().prop_filter("unit", |q| *q != rational0()),
        prop::collection::vec(rational_scalar(), 0..4),
    )
        .prop_map(|(rho, u, poly)| {
            let kind = if rho { ShapeKind::Rho } else { ShapeKind::Theta };
            Endomorphism::elementary(kind, Scalar::from_rational(u), &poly)
        })
}

fn rational0() -> tame_core::Rational {
    tame_core::scalars::int(0)
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.mul(&Scalar::one()), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn scalar_rendering_is_canonical(a in scalar(), b in scalar()) {
        // equal values render identically
        let lhs = a.add(&b).mul(&a.sub(&b));
        let rhs = a.mul(&a).sub(&b.mul(&b));
        prop_assert_eq!(lhs.to_string(), rhs.to_string());
    }

    #[test]
    fn leibniz_rule(d in derivation(), p in poly(), q in poly()) {
        let lhs = d.apply(&(&p * &q), &caps()).unwrap();
        let rhs = &p * &d.apply(&q, &caps()).unwrap() + &q * &d.apply(&p, &caps()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_map(phi in elementary(), p in poly(), q in poly()) {
        let f = |r: &Poly2| phi.apply(r, &caps()).unwrap();
        prop_assert_eq!(f(&(&p * &q)), f(&p) * f(&q));
        prop_assert_eq!(f(&(&p + &q)), f(&p) + f(&q));
        prop_assert_eq!(f(&Poly2::one()), Poly2::one());
    }

    #[test]
    fn composition_acts_outer_after_inner(f in elementary(), g in elementary(), h in elementary(), p in poly()) {
        let fg = Endomorphism::compose(&f, &g, &caps()).unwrap();
        let direct = f.apply(&g.apply(&p, &caps()).unwrap(), &caps()).unwrap();
        prop_assert_eq!(fg.apply(&p, &caps()).unwrap(), direct);
        let left = Endomorphism::compose(&fg, &h, &caps()).unwrap();
        let right = Endomorphism::compose(&f, &Endomorphism::compose(&g, &h, &caps()).unwrap(), &caps()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bracket_is_a_lie_bracket(a in derivation(), b in derivation(), c in derivation(), p in poly()) {
        let k = caps();
        let ab = a.bracket(&b, &k).unwrap();
        prop_assert_eq!(ab.clone(), b.bracket(&a, &k).unwrap().neg());
        let jacobi = a.bracket(&b.bracket(&c, &k).unwrap(), &k).unwrap()
            .add(&b.bracket(&c.bracket(&a, &k).unwrap(), &k).unwrap())
            .add(&c.bracket(&a.bracket(&b, &k).unwrap(), &k).unwrap());
        prop_assert!(jacobi.is_zero());
        // [A, B](p) = A(B(p)) - B(A(p))
        let direct = a.apply(&b.apply(&p, &k).unwrap(), &k).unwrap() - b.apply(&a.apply(&p, &k).unwrap(), &k).unwrap();
        prop_assert_eq!(ab.apply(&p, &k).unwrap(), direct);
    }

    #[test]
    fn elementary_inverse_is_two_sided(phi in elementary()) {
        let inv = elementary_inverse(&phi).unwrap();
        prop_assert!(Endomorphism::compose(&phi, &inv, &caps()).unwrap().is_identity());
        prop_assert!(Endomorphism::compose(&inv, &phi, &caps()).unwrap().is_identity());
    }

    #[test]
    fn conjugate_acts_pointwise(d in derivation(), phi in elementary(), p in poly()) {
        let k = caps();
        let inv = elementary_inverse(&phi).unwrap();
        let conj = d.conjugate(&phi, &inv, &k).unwrap();
        let direct = phi.apply(&d.apply(&inv.apply(&p, &k).unwrap(), &k).unwrap(), &k).unwrap();
        prop_assert_eq!(conj.apply(&p, &k).unwrap(), direct);
    }

    #[test]
    fn commuting_on_generators_commutes_everywhere(
        idx in 0usize..24, unit in 1i64..4, lin in -3i64..=3, p in poly()
    ) {
        // maps that commute with a registry derivation, and ones that need not
        let forms = registry();
        let (_, d) = &forms[idx % forms.len()];
        let phi = Endomorphism::new(Poly2::x(), Poly2::y().scale(&Scalar::from_int(unit)) + c(lin) * Poly2::x());
        let k = caps();
        let holds = commute_check(&Operator::Derivation(d.clone()), &Operator::Endomorphism(phi.clone()), &k).unwrap();
        let lhs = phi.apply(&d.apply(&p, &k).unwrap(), &k).unwrap();
        let rhs = d.apply(&phi.apply(&p, &k).unwrap(), &k).unwrap();
        if holds {
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn generator_subspace_is_stable(idx in 0usize..24, coords in prop::collection::vec(rational_scalar(), 12)) {
        let forms = registry();
        let (_, d) = &forms[idx % forms.len()];
        let space = generator_subspace(d, &caps()).unwrap();
        prop_assert_eq!(space.basis[0].clone(), Poly2::x());
        prop_assert_eq!(space.basis[1].clone(), Poly2::y());
        let v = space.combine(&coords[..space.dim()]);
        let image = d.apply(&v, &caps()).unwrap();
        let got = space.coordinates(&image).expect("image stays in the span");
        prop_assert_eq!(got, space.matrix.mul_vec(&coords[..space.dim()]));
    }
}

#[test]
fn field_trait_matches_inherent_arithmetic() {
    let a = Scalar::from_int(3).add(&tame_core::exp_symbol(tame_core::scalars::int(1)));
    let b = Scalar::from_int(-2);
    assert_eq!(<Scalar as Field>::mul(&a, &b), a.mul(&b));
    assert_eq!(<Scalar as Field>::inv(&a).unwrap(), a.inv().unwrap());
}

#[test]
fn non_commuting_map_is_rejected() {
    let d = Derivation::new(Poly2::zero(), x().pow(2));
    let phi = Endomorphism::new(x(), c(2) * y());
    assert!(!commute_check(&Operator::Derivation(d), &Operator::Endomorphism(phi), &caps()).unwrap());
}

//! Coefficient equations for `φ∘T = T∘φ` with `φ` elementary and symbolic.

use alloc::vec::Vec;

use super::ElementaryShape;
use crate::error::Result;
use crate::mpoly::{MPoly, SymPoly};
use crate::operators::{Caps, Endomorphism, Operator, ShapeKind};
use crate::poly2::{check_cap, Grading, Monomial, Poly2, Var};

/// Symbolic images of `X` and `Y` under the elementary map of `shape`:
/// unknown 0 is the unit, unknown `1 + i` the coefficient of degree `i`.
pub(crate) fn symbolic_images(shape: &ElementaryShape) -> (SymPoly, SymPoly) {
    let n = shape.unknowns();
    let unit_part = |m: Monomial| SymPoly::term(m, MPoly::var(n, 0));
    let poly_part = |other: Var| {
        (0..=shape.degree_bound).fold(SymPoly::zero(n), |acc, i| {
            let m = match other {
                Var::X => Monomial::new(i as u32, 0),
                Var::Y => Monomial::new(0, i as u32),
            };
            acc.add(&SymPoly::term(m, MPoly::var(n, 1 + i)))
        })
    };
    match shape.kind {
        ShapeKind::Rho => (unit_part(Monomial::new(1, 0)).add(&poly_part(Var::Y)), SymPoly::lift(&Poly2::y(), n)),
        ShapeKind::Theta => (SymPoly::lift(&Poly2::x(), n), unit_part(Monomial::new(0, 1)).add(&poly_part(Var::X))),
    }
}

fn degree(p: &Poly2) -> u32 {
    p.degree(Grading::Total).finite().unwrap_or(0)
}

pub(crate) fn commutation_equations(target: &Operator, shape: &ElementaryShape, caps: &Caps) -> Result<Vec<MPoly>> {
    let (img_x, img_y) = symbolic_images(shape);
    let d = shape.degree_bound.max(1) as u32;
    let mut eqs = Vec::new();
    for v in [Var::X, Var::Y] {
        let phi_v = if v == Var::X { &img_x } else { &img_y };
        let diff = match target {
            Operator::Derivation(der) => {
                check_cap(degree(der.image(v)).saturating_mul(d).max(degree(der.image(Var::X)).max(degree(der.image(Var::Y))) + d), caps.deg_cap)?;
                // φ(D(v)) − D(φ(v))
                let lhs = SymPoly::substitute_into(der.image(v), &img_x, &img_y);
                let rhs = phi_v.partial(Var::X).mul_concrete(der.image(Var::X)).add(&phi_v.partial(Var::Y).mul_concrete(der.image(Var::Y)));
                lhs.sub(&rhs)
            }
            Operator::Endomorphism(psi) => {
                check_cap(image_degree(psi).saturating_mul(d), caps.deg_cap)?;
                // φ(ψ(v)) − ψ(φ(v))
                let lhs = SymPoly::substitute_into(psi.image(v), &img_x, &img_y);
                let rhs = phi_v.substitute_concrete(psi.image(Var::X), psi.image(Var::Y));
                lhs.sub(&rhs)
            }
        };
        eqs.extend(diff.coefficients().map(|(_, c)| c.clone()));
    }
    Ok(eqs)
}

fn image_degree(psi: &Endomorphism) -> u32 {
    degree(psi.image(Var::X)).max(degree(psi.image(Var::Y)))
}

//! `exp(D)` for locally finite derivations.
//!
//! Locally nilpotent `D` use the finite Taylor series. Otherwise the matrix
//! `M = S + N` of `D` on the span of the iterates of `X, Y` gives
//! `exp(M) = (Σ E(λᵢ)·Pᵢ)·(Σ N^k/k!)`, with every factor a polynomial in `M`
//! reduced modulo the characteristic polynomial.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jordan::{eval_on_vector, rational_generator_data};
use crate::operators::{elementary_inverse, generator_subspace, nilpotent_on_generators, Caps, Derivation, Endomorphism};
use crate::poly2::{Poly2, Var};
use crate::scalars::{exp_symbol, Rational, Scalar};
use crate::upoly::DensePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpCertificate {
    pub inverse_checked: bool,
    pub lnd_path_used: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpResult {
    pub automorphism: Endomorphism,
    pub certificate: ExpCertificate,
}

fn taylor(d: &Derivation, v: Var, caps: &Caps) -> Result<Poly2> {
    let mut term = Poly2::var(v);
    let mut sum = Poly2::zero();
    let mut j: i64 = 0;
    let mut factorial = Rational::one();
    while !term.is_zero() {
        sum = sum.add(&term.scale(&Scalar::from_rational(factorial.recip())));
        term = d.apply(&term, caps)?;
        j += 1;
        factorial *= Rational::from_integer(j.into());
    }
    Ok(sum)
}

/// `Σ_j D^j(X)/j!` and likewise for `Y`.
pub fn exp_lnd(d: &Derivation, caps: &Caps) -> Result<Endomorphism> {
    let space = generator_subspace(d, caps).map_err(|_| Error::NotLocallyNilpotent)?;
    if !nilpotent_on_generators(d, space.dim(), caps) {
        return Err(Error::NotLocallyNilpotent);
    }
    Ok(Endomorphism::new(taylor(d, Var::X, caps)?, taylor(d, Var::Y, caps)?))
}

fn exp_spectral(d: &Derivation, caps: &Caps) -> Result<Endomorphism> {
    let (space, q, data) = rational_generator_data(d, caps)?;
    let chi = &data.charpoly;
    let n = space.dim();
    let nil = data.nilpotent();

    // Σ_{k<n} N^k / k!  as a polynomial in M
    let mut exp_nil = DensePoly::zero();
    let mut power = DensePoly::one();
    let mut factorial = Rational::one();
    for k in 0..n.max(1) {
        if k > 0 {
            factorial *= Rational::from_integer((k as i64).into());
            power = power.mul(&nil).rem(chi).expect("nonzero modulus");
        }
        exp_nil = exp_nil.add(&power.scale(&factorial.recip()));
    }

    let blocks: Vec<(Scalar, DensePoly<Rational>)> = (0..data.spectrum.eigenvalues.len())
        .map(|i| {
            let weight = exp_symbol(data.spectrum.eigenvalues[i].0.clone());
            let poly = data.projector(i).mul(&exp_nil).rem(chi).expect("nonzero modulus");
            (weight, poly)
        })
        .collect();

    let image = |index: usize| -> Poly2 {
        let mut unit = alloc::vec![Rational::zero(); n];
        unit[index] = Rational::one();
        let mut coords = alloc::vec![Scalar::zero(); n];
        for (weight, poly) in &blocks {
            for (c, r) in coords.iter_mut().zip(eval_on_vector(poly, &q, &unit)) {
                if !r.is_zero() {
                    *c = &*c + &(weight * &Scalar::from_rational(r));
                }
            }
        }
        space.combine(&coords)
    };
    Ok(Endomorphism::new(image(0), image(1)))
}

fn exp_any(d: &Derivation, caps: &Caps) -> Result<(Endomorphism, bool)> {
    let space = generator_subspace(d, caps)?;
    if nilpotent_on_generators(d, space.dim(), caps) {
        Ok((Endomorphism::new(taylor(d, Var::X, caps)?, taylor(d, Var::Y, caps)?), true))
    } else {
        Ok((exp_spectral(d, caps)?, false))
    }
}

/// `exp(D)`, with the inverse `exp(−D)` checked by composition.
pub fn exp_derivation(d: &Derivation, caps: &Caps) -> Result<ExpResult> {
    let (automorphism, lnd_path_used) = exp_any(d, caps)?;
    let (inverse, _) = exp_any(&d.neg(), caps)?;
    let inverse_checked = Endomorphism::compose(&automorphism, &inverse, caps)?.is_identity()
        && Endomorphism::compose(&inverse, &automorphism, caps)?.is_identity();
    Ok(ExpResult { automorphism, certificate: ExpCertificate { inverse_checked, lnd_path_used } })
}

/// Composes a word of elementary automorphisms and its inverse.
pub fn word_with_inverse(word: &[Endomorphism], caps: &Caps) -> Result<(Endomorphism, Endomorphism)> {
    let mut phi = Endomorphism::identity();
    let mut inv = Endomorphism::identity();
    for letter in word {
        phi = Endomorphism::compose(&phi, letter, caps)?;
        inv = Endomorphism::compose(&elementary_inverse(letter)?, &inv, caps)?;
    }
    Ok((phi, inv))
}

/// `φ∘exp(D)∘φ⁻¹ = exp(φDφ⁻¹)` on `X` and `Y`, for `φ` the product of `word`.
pub fn conjugation_identity_check(word: &[Endomorphism], d: &Derivation, caps: &Caps) -> Result<bool> {
    let (phi, phi_inv) = word_with_inverse(word, caps)?;
    let exp_d = exp_derivation(d, caps)?.automorphism;
    let lhs = Endomorphism::compose(&phi, &Endomorphism::compose(&exp_d, &phi_inv, caps)?, caps)?;
    let conjugated = d.conjugate(&phi, &phi_inv, caps)?;
    let rhs = exp_derivation(&conjugated, caps)?.automorphism;
    Ok(lhs == rhs)
}

//! The univariate functional equations that the commutation conditions of
//! the normal forms reduce to, solved by coefficient comparison up to a
//! degree bound.
//!
//! Each solver returns the solution set as an [`AffineSpace`] of
//! coefficient vectors `(g₀, …, g_d)`; `solve_affine_l37` prepends the
//! unit `α`.

use alloc::vec::Vec;

use num_traits::Zero;

use super::affine::AffineSpace;
use crate::error::{Error, Result};
use crate::scalars::{exp_symbol, Rational, Scalar};
use crate::upoly::DensePoly;

/// Solves `Σ vⱼ·images[j] + constant = 0` coefficientwise.
fn solve(images: &[DensePoly<Scalar>], constant: &DensePoly<Scalar>) -> AffineSpace {
    let n = images.len();
    let top = images.iter().chain([constant]).filter_map(DensePoly::degree).max().unwrap_or(0);
    let rows: Vec<Vec<Scalar>> = (0..=top)
        .map(|k| {
            let mut row: Vec<Scalar> = images.iter().map(|p| p.coeff(k)).collect();
            row.push(constant.coeff(k));
            row
        })
        .collect();
    AffineSpace::from_equations(&rows, n).expect("homogeneous or consistent system")
}

fn mono(k: usize, c: Scalar) -> DensePoly<Scalar> {
    DensePoly::monomial(k).scale(&c)
}

fn q(r: &Rational) -> Scalar {
    Scalar::from_rational(r.clone())
}

/// `g′(X)·X = b·g(X)`, `deg g ≤ d`.
pub fn solve_euler(b: &Rational, d: usize) -> AffineSpace {
    let images: Vec<_> = (0..=d).map(|j| mono(j, Scalar::from_int(j as i64).sub(&q(b)))).collect();
    solve(&images, &DensePoly::zero())
}

/// `α·X + a·X·g′(X) = a·g(X) + X`, unknowns `(α, g₀, …, g_d)`.
pub fn solve_affine_l37(a: &Rational, d: usize) -> Result<AffineSpace> {
    if Zero::is_zero(a) {
        return Err(Error::ZeroParameter);
    }
    let a = q(a);
    let mut images = alloc::vec![mono(1, Scalar::one())];
    images.extend((0..=d).map(|j| mono(j, a.mul(&Scalar::from_int(j as i64)).sub(&a))));
    Ok(solve(&images, &mono(1, Scalar::one().neg())))
}

/// `a·g′(X)·X + g′(X) = a·g(X)`.
pub fn solve_l38(a: &Rational, d: usize) -> Result<AffineSpace> {
    if Zero::is_zero(a) {
        return Err(Error::ZeroParameter);
    }
    let a = q(a);
    let images: Vec<_> = (0..=d)
        .map(|j| {
            let jj = Scalar::from_int(j as i64);
            let lower = if j > 0 { mono(j - 1, jj.clone()) } else { DensePoly::zero() };
            mono(j, a.mul(&jj).sub(&a)).add(&lower)
        })
        .collect();
    Ok(solve(&images, &DensePoly::zero()))
}

/// `f(E(p)·X) = E(p·m)·f(X)`.
pub fn solve_qdiff(p: &Rational, m: u32, d: usize) -> Result<AffineSpace> {
    if Zero::is_zero(p) {
        return Err(Error::ZeroParameter);
    }
    let target = exp_symbol(p * Rational::from_integer(m.into()));
    let images: Vec<_> = (0..=d)
        .map(|j| mono(j, exp_symbol(p * Rational::from_integer((j as u64).into())).sub(&target)))
        .collect();
    Ok(solve(&images, &DensePoly::zero()))
}

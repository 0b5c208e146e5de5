//! Jordan–Chevalley splitting `D = D_s + D_n` for locally finite derivations
//! whose matrix on the span of the iterates of `X, Y` has rational spectrum.
//!
//! The semisimple part is `S = p(M)` for the interpolation polynomial with
//! `p ≡ λ_i mod (t − λ_i)^{m_i}`, obtained by the Chinese remainder theorem.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{charpoly, Matrix};
use crate::operators::{generator_subspace, nilpotent_on_generators, Caps, Derivation, InvariantSubspace};
use crate::scalars::{Rational, Scalar};
use crate::upoly::DensePoly;

/// Distinct eigenvalues with algebraic multiplicities, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<(Rational, usize)>,
}

impl SpectrumReport {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|(_, m)| m).sum()
    }

    pub fn distinct(&self) -> impl Iterator<Item = &Rational> {
        self.eigenvalues.iter().map(|(l, _)| l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: Derivation,
    pub nilpotent: Derivation,
}

/// Outcome of the checks a [`JordanPair`] must pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JordanCertificate {
    pub sum_matches: bool,
    pub bracket_zero: bool,
    pub nilpotent_part_lnd: bool,
    pub semisimple_diagonalizable: bool,
}

impl JordanCertificate {
    pub fn all(&self) -> bool {
        self.sum_matches && self.bracket_zero && self.nilpotent_part_lnd && self.semisimple_diagonalizable
    }
}

pub fn rational_matrix(m: &Matrix<Scalar>) -> Result<Matrix<Rational>> {
    let rows = m
        .to_rows()
        .into_iter()
        .map(|row| row.iter().map(|s| s.as_rational().ok_or(Error::NonRationalEntries)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Ok(Matrix::from_rows(rows))
}

/// Eigen-data of a rational matrix plus the polynomial `p` with `S = p(M)`.
#[derive(Clone, Debug)]
pub(crate) struct Chevalley {
    pub spectrum: SpectrumReport,
    pub charpoly: DensePoly<Rational>,
    pub semisimple: DensePoly<Rational>,
}

impl Chevalley {
    pub fn new(m: &Matrix<Rational>) -> Result<Self> {
        let chi = charpoly(m);
        let (roots, rest) = chi.rational_roots()?;
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::IrrationalSpectrum);
        }
        let spectrum = SpectrumReport { eigenvalues: roots };
        let semisimple = interpolation_polynomial(&spectrum, &chi);
        Ok(Self { spectrum, charpoly: chi, semisimple })
    }

    /// Polynomial of `M` giving the nilpotent part `N = M − S`.
    pub fn nilpotent(&self) -> DensePoly<Rational> {
        DensePoly::monomial(1).sub(&self.semisimple)
    }

    /// Spectral projector onto the generalized eigenspace of `λ_i`, as a
    /// polynomial in `M`: `∏_{j≠i} (S − λ_j)/(λ_i − λ_j)`.
    pub fn projector(&self, i: usize) -> DensePoly<Rational> {
        let lambda_i = &self.spectrum.eigenvalues[i].0;
        let mut acc = DensePoly::one();
        for (j, (lambda_j, _)) in self.spectrum.eigenvalues.iter().enumerate() {
            if j == i {
                continue;
            }
            let factor = self.semisimple.sub(&DensePoly::constant(lambda_j.clone()));
            let scale = (lambda_i - lambda_j).recip();
            acc = acc.mul(&factor).scale(&scale).rem(&self.charpoly).expect("nonzero modulus");
        }
        acc
    }
}

/// `p` with `p ≡ λ_i mod (t − λ_i)^{m_i}` for every eigenvalue, reduced mod `chi`.
fn interpolation_polynomial(spectrum: &SpectrumReport, chi: &DensePoly<Rational>) -> DensePoly<Rational> {
    let mut acc = DensePoly::zero();
    for (lambda, mult) in &spectrum.eigenvalues {
        let local = DensePoly::linear_root(lambda).pow(*mult as u32);
        let cofactor = chi.div_rem(&local).expect("nonzero").0;
        let reduced = cofactor.rem(&local).expect("nonzero");
        let (g, inv) = reduced.ext_gcd(&local);
        debug_assert_eq!(g, DensePoly::one());
        let idempotent = cofactor.mul(&inv);
        acc = acc.add(&idempotent.scale(lambda));
    }
    acc.rem(chi).expect("nonzero modulus")
}

/// `p(M)` by Horner's rule.
pub fn eval_matrix<F: Field>(p: &DensePoly<F>, m: &Matrix<F>) -> Matrix<F> {
    let n = m.rows();
    p.coeffs()
        .iter()
        .rev()
        .fold(Matrix::zeros(n, n), |acc, c| acc.mul(m).add(&Matrix::identity(n).scale(c)))
}

/// `p(M)·v` by Horner's rule on vectors.
pub fn eval_on_vector<F: Field>(p: &DensePoly<F>, m: &Matrix<F>, v: &[F]) -> Vec<F> {
    let mut acc: Vec<F> = alloc::vec![F::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = a.add(&c.mul(x));
        }
    }
    acc
}

pub fn matrix_spectrum(m: &Matrix<Scalar>) -> Result<SpectrumReport> {
    Ok(Chevalley::new(&rational_matrix(m)?)?.spectrum)
}

/// `(S, N)` with `S + N = M`, `SN = NS`, `N` nilpotent, `S` diagonalizable.
pub fn jordan_chevalley_matrix(m: &Matrix<Scalar>) -> Result<(Matrix<Scalar>, Matrix<Scalar>)> {
    let q = rational_matrix(m)?;
    let data = Chevalley::new(&q)?;
    let s = eval_matrix(&data.semisimple, &q);
    let n = q.sub(&s);
    Ok((s.map(|x| Scalar::from_rational(x.clone())), n.map(|x| Scalar::from_rational(x.clone()))))
}

/// `∏ (S − λ I) = 0` over the distinct eigenvalues.
pub fn diagonalizable_certificate(s: &Matrix<Scalar>, spectrum: &SpectrumReport) -> bool {
    let n = s.rows();
    let prod = spectrum.distinct().fold(Matrix::identity(n), |acc: Matrix<Scalar>, l| {
        acc.mul(&s.sub(&Matrix::identity(n).scale(&Scalar::from_rational(l.clone()))))
    });
    prod.is_zero()
}

pub(crate) fn rational_generator_data(d: &Derivation, caps: &Caps) -> Result<(InvariantSubspace, Matrix<Rational>, Chevalley)> {
    let space = generator_subspace(d, caps)?;
    let q = rational_matrix(&space.matrix)?;
    let data = Chevalley::new(&q)?;
    Ok((space, q, data))
}

fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = alloc::vec![<Rational as Zero>::zero(); n];
    v[i] = <Rational as One>::one();
    v
}

fn lift(v: &[Rational]) -> Vec<Scalar> {
    v.iter().map(|x| Scalar::from_rational(x.clone())).collect()
}

/// `D = D_s + D_n`, read back on `X` and `Y` from the matrix splitting.
pub fn jordan_decompose(d: &Derivation, caps: &Caps) -> Result<JordanPair> {
    let (space, q, data) = rational_generator_data(d, caps)?;
    let n = space.dim();
    // X and Y are the first two basis elements
    let sx = eval_on_vector(&data.semisimple, &q, &unit_vector(n, 0));
    let sy = eval_on_vector(&data.semisimple, &q, &unit_vector(n, 1));
    let semisimple = Derivation::new(space.combine(&lift(&sx)), space.combine(&lift(&sy)));
    let nilpotent = d.sub(&semisimple);
    Ok(JordanPair { semisimple, nilpotent })
}

/// Checks every defining property of a Jordan pair for `d`.
pub fn certify(d: &Derivation, pair: &JordanPair, caps: &Caps) -> Result<JordanCertificate> {
    let sum_matches = pair.semisimple.add(&pair.nilpotent) == *d;
    let bracket_zero = pair.semisimple.bracket(&pair.nilpotent, caps)?.is_zero();
    let nilpotent_part_lnd = match generator_subspace(&pair.nilpotent, caps) {
        Ok(v) => nilpotent_on_generators(&pair.nilpotent, v.dim(), caps),
        Err(_) => false,
    };
    let space = generator_subspace(&pair.semisimple, caps)?;
    let spectrum = matrix_spectrum(&space.matrix)?;
    let semisimple_diagonalizable = diagonalizable_certificate(&space.matrix, &spectrum);
    Ok(JordanCertificate { sum_matches, bracket_zero, nilpotent_part_lnd, semisimple_diagonalizable })
}

use num_traits::{One, Zero};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly2::Poly2;
    use crate::scalars::int;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }
    fn x() -> Poly2 {
        Poly2::x()
    }
    fn y() -> Poly2 {
        Poly2::y()
    }
    fn c(n: i64) -> Poly2 {
        Poly2::constant(Scalar::from_int(n))
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(matrix_spectrum(&m(&[&[1, 1], &[0, 1]])).unwrap().eigenvalues, vec![(int(1), 2)]);
        // 2X∂X + (6Y + X^3)∂Y on {X, Y, X^3}
        let d = Derivation::new(c(2) * x(), c(6) * y() + x().pow(3));
        let v = generator_subspace(&d, &Caps::default()).unwrap();
        assert_eq!(v.basis, vec![x(), y(), x().pow(3)]);
        assert_eq!(matrix_spectrum(&v.matrix).unwrap().eigenvalues, vec![(int(2), 1), (int(6), 2)]);
        assert_eq!(matrix_spectrum(&m(&[&[0, 1], &[1, 0]])).unwrap().eigenvalues, vec![(int(-1), 1), (int(1), 1)]);
    }

    #[test]
    fn spectrum_errors() {
        assert_eq!(matrix_spectrum(&m(&[&[0, -1], &[1, 0]])), Err(Error::IrrationalSpectrum));
        let e = Matrix::from_rows(vec![vec![crate::scalars::exp_symbol(int(1))]]);
        assert_eq!(matrix_spectrum(&e), Err(Error::NonRationalEntries));
    }

    #[test]
    fn matrix_splitting_examples() {
        let diag = m(&[&[2, 0], &[0, 5]]);
        let (s, n) = jordan_chevalley_matrix(&diag).unwrap();
        assert_eq!(s, diag);
        assert!(n.is_zero());
        let (s, n) = jordan_chevalley_matrix(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(s, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(n, m(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn resonant_matrix_splitting() {
        let d = Derivation::new(c(2) * x(), c(6) * y() + x().pow(3));
        let v = generator_subspace(&d, &Caps::default()).unwrap();
        let (s, n) = jordan_chevalley_matrix(&v.matrix).unwrap();
        assert_eq!(s.add(&n), v.matrix);
        assert_eq!(s.mul(&n), n.mul(&s));
        assert!(n.mul(&n).is_zero());
        assert_eq!(s, m(&[&[2, 0, 0], &[0, 6, 0], &[0, 0, 6]]));
        // column j holds D(basis j): D(Y) picks up X^3
        assert_eq!(n, m(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn decompose_examples() {
        let caps = Caps::default();
        let d = Derivation::new(c(2) * x(), c(6) * y() + x().pow(3));
        let pair = jordan_decompose(&d, &caps).unwrap();
        assert_eq!(pair.semisimple, Derivation::new(c(2) * x(), c(6) * y()));
        assert_eq!(pair.nilpotent, Derivation::new(Poly2::zero(), x().pow(3)));
        assert!(certify(&d, &pair, &caps).unwrap().all());

        let lnd = Derivation::new(Poly2::zero(), x().pow(2) + c(1));
        let pair = jordan_decompose(&lnd, &caps).unwrap();
        assert!(pair.semisimple.is_zero());
        assert_eq!(pair.nilpotent, lnd);

        let ss = Derivation::new(c(3) * x(), c(5) * y());
        let pair = jordan_decompose(&ss, &caps).unwrap();
        assert_eq!(pair.semisimple, ss);
        assert!(pair.nilpotent.is_zero());
    }

    #[test]
    fn projectors_sum_to_identity() {
        let q = rational_matrix(&m(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 5]])).unwrap();
        let data = Chevalley::new(&q).unwrap();
        let sum = (0..data.spectrum.eigenvalues.len())
            .map(|i| eval_matrix(&data.projector(i), &q))
            .fold(Matrix::zeros(3, 3), |a, p| a.add(&p));
        assert_eq!(sum, Matrix::identity(3));
    }
}

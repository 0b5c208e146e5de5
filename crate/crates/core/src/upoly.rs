//! Dense univariate polynomials over an exact field.
//!
//! Used for Laurent-polynomial gcds inside [`crate::scalars`], characteristic
//! polynomials and Chinese-remainder interpolation in [`crate::jordan`], and
//! the unit equations of the commutant solver.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalars::Rational;

/// Coefficients stored from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensePoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> DensePoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`
    pub fn linear_root(root: &F) -> Self {
        Self::new(vec![root.neg(), F::one()])
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(Field::neg).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead_inv = divisor.leading()?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(d));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(Field::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` and `s * self ≡ g (mod modulus)`.
    pub fn ext_gcd(&self, modulus: &Self) -> (Self, Self) {
        let (mut r0, mut r1) = (self.clone(), modulus.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        match r0.leading().and_then(Field::inv) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv)),
            None => (r0, s0),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_rational(&Rational::from_integer(BigInt::from(i)))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Polynomial composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// Largest power of `t` dividing `self`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `self / gcd(self, self')`: the product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }

    /// If the polynomial is `c_s t^s + c_0` with `s ≥ 1`, returns `(s, -c_0/c_s)`.
    pub fn as_binomial(&self) -> Option<(usize, F)> {
        let s = self.degree()?;
        if s == 0 || self.coeffs[1..s].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let lead = self.coeffs[s].inv()?;
        Some((s, self.coeffs[0].neg().mul(&lead)))
    }
}

/// Bound on the absolute value of integers whose divisors we enumerate.
const MAX_TRIAL: u64 = 1 << 40;

/// Distinct roots with multiplicities, and the cofactor free of rational roots.
pub type RationalRoots = (Vec<(Rational, usize)>, DensePoly<Rational>);

impl DensePoly<Rational> {
    /// All distinct rational roots, ascending, and the remaining cofactor
    /// after dividing out every rational linear factor (with multiplicity).
    pub fn rational_roots(&self) -> Result<RationalRoots> {
        let mut roots = Vec::new();
        let mut rest = self.monic();
        if rest.is_zero() {
            return Ok((roots, rest));
        }
        let zero_mult = rest.low_order();
        if zero_mult > 0 {
            roots.push((<Rational as Zero>::zero(), zero_mult));
            rest = rest.shift_down(zero_mult);
        }
        if rest.degree() == Some(0) {
            return Ok((roots, rest));
        }
        // candidates p/q: p | constant term, q | leading coefficient of the
        // primitive integer multiple of the squarefree part
        let sqf = rest.squarefree_part();
        let ints = integer_multiple(&sqf);
        let lead = ints.last().expect("nonzero").abs();
        let constant = ints[0].abs();
        let p_divs = divisors(&constant)?;
        let q_divs = divisors(&lead)?;
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &p_divs {
            for q in &q_divs {
                let c = Rational::new(p.clone(), q.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            if !Field::is_zero(&sqf.eval(&c)) {
                continue;
            }
            let factor = Self::linear_root(&c);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&factor).expect("monic factor");
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            roots.push((c, mult));
        }
        roots.sort();
        Ok((roots, rest))
    }
}

/// Scales a rational polynomial to a primitive integer polynomial.
fn integer_multiple(p: &DensePoly<Rational>) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v <= MAX_TRIAL).ok_or(Error::SpectrumTooLarge)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(cs: &[i64]) -> DensePoly<Rational> {
        DensePoly::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = poly(&[-2, 1, 1]);
        let b = poly(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
    }

    #[test]
    fn ext_gcd_gives_inverse() {
        let m = poly(&[1, 0, 1]);
        let a = poly(&[1, 1]);
        let (g, s) = a.ext_gcd(&m);
        assert_eq!(g, DensePoly::one());
        assert_eq!(s.mul(&a).rem(&m).unwrap(), DensePoly::one());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (t - 2)^2 (2t + 1) (t^2 + 1)
        let p = poly(&[-2, 1]).pow(2).mul(&poly(&[1, 2])).mul(&poly(&[1, 0, 1]));
        let (roots, rest) = p.rational_roots().unwrap();
        assert_eq!(roots, vec![(Rational::new((-1).into(), 2.into()), 1), (q(2), 2)]);
        assert_eq!(rest, poly(&[1, 0, 1]));
    }

    #[test]
    fn binomial_detection() {
        assert_eq!(poly(&[-1, 0, 0, 1]).as_binomial(), Some((3, q(1))));
        assert_eq!(poly(&[-1, 1, 1]).as_binomial(), None);
        assert_eq!(poly(&[4, 2]).as_binomial(), Some((1, q(-2))));
    }
}

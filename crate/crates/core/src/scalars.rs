//! The coefficient field `Q(E)`.
//!
//! An [`ExpPolynomial`] is a finite sum `Σ c_q E(q)` with rational exponents,
//! i.e. an element of the group ring `Q[E^Q]`. A [`Scalar`] is a quotient of
//! two of them, kept in a canonical reduced form so that equality is
//! structural:
//!
//! 1. all exponents are rescaled by the lcm `N` of their denominators, which
//!    turns numerator and denominator into Laurent polynomials in
//!    `t = E(1/N)`;
//! 2. both are divided by their gcd in `Q[t]`;
//! 3. the denominator is shifted to have lowest exponent 0 and scaled so that
//!    its constant coefficient is 1.
//!
//! The gcd of polynomials in `t^k` is itself a polynomial in `t^k`, so the
//! result does not depend on which common denominator was used.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::upoly::DensePoly;

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `Σ coeff · E(exponent)`, terms sorted by ascending exponent, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpPolynomial {
    terms: Vec<(Rational, Rational)>,
}

impl ExpPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Rational::zero(), c)
    }

    pub fn term(exponent: Rational, coeff: Rational) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: alloc::vec![(exponent, coeff)] }
        }
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut terms: Vec<(Rational, Rational)> = pairs.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value when only the exponent-0 term is present.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate_rhs { -c } else { c.clone() };
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((rhs.terms[j].0.clone(), sign(&rhs.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + sign(&rhs.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        let mut acc = alloc::collections::BTreeMap::<Rational, Rational>::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Multiplies by `coeff · E(exponent)`.
    pub fn mul_term(&self, exponent: &Rational, coeff: &Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e + exponent, c * coeff)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_term(&Rational::zero(), c)
    }

    /// lcm of the exponent denominators.
    fn exponent_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (e, _)| acc.lcm(e.denom()))
    }

    /// Rescales exponents by `n` (which must clear every denominator) and
    /// returns `(lowest exponent, dense coefficients from that exponent up)`.
    fn to_laurent(&self, n: &BigInt) -> (BigInt, DensePoly<Rational>) {
        let scaled: Vec<(BigInt, &Rational)> =
            self.terms.iter().map(|(e, c)| ((e * Rational::from_integer(n.clone())).to_integer(), c)).collect();
        let low = scaled[0].0.clone();
        let width = (&scaled.last().expect("nonzero").0 - &low).to_usize().expect("exponent span fits in memory");
        let mut coeffs = alloc::vec![Rational::zero(); width + 1];
        for (e, c) in scaled {
            coeffs[(e - &low).to_usize().expect("in range")] = c.clone();
        }
        (low, DensePoly::new(coeffs))
    }

    fn from_laurent(low: &BigInt, n: &BigInt, poly: &DensePoly<Rational>) -> Self {
        Self {
            terms: poly
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Rational::new(low + BigInt::from(i), n.clone()), c.clone()))
                .collect(),
        }
    }
}

/// An element of `Q(E)` in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: ExpPolynomial,
    den: ExpPolynomial,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

/// `E(q)`, the formal stand-in for `e^q`.
pub fn exp_symbol(q: Rational) -> Scalar {
    Scalar { num: ExpPolynomial::term(q, Rational::one()), den: ExpPolynomial::one() }
}

impl Scalar {
    pub fn zero() -> Self {
        Self { num: ExpPolynomial::zero(), den: ExpPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self { num: ExpPolynomial::constant(q), den: ExpPolynomial::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_exp_polynomial(p: ExpPolynomial) -> Self {
        Self { num: p, den: ExpPolynomial::one() }
    }

    /// Builds `num / den` and normalizes it.
    pub fn from_fraction(num: ExpPolynomial, den: ExpPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn numerator(&self) -> &ExpPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &ExpPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_rational()
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// True when the value is `c·E(q)` for a single term (including zero).
    pub fn is_single_term(&self) -> bool {
        self.den.is_one() && self.num.len() <= 1
    }

    fn normalize(num: ExpPolynomial, den: ExpPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.len() == 1 {
            let (e, c) = &den.terms[0];
            return Self { num: num.mul_term(&-e, &c.recip()), den: ExpPolynomial::one() };
        }
        let n = num.exponent_lcm().lcm(&den.exponent_lcm());
        let (num_low, num_poly) = num.to_laurent(&n);
        let (den_low, den_poly) = den.to_laurent(&n);
        let g = num_poly.gcd(&den_poly);
        let num_poly = num_poly.div_rem(&g).expect("gcd divides").0;
        let den_poly = den_poly.div_rem(&g).expect("gcd divides").0;
        let c0 = den_poly.coeff(0).recip();
        let num_poly = num_poly.scale(&c0);
        let den_poly = den_poly.scale(&c0);
        let num = ExpPolynomial::from_laurent(&(num_low - den_low), &n, &num_poly);
        let den = ExpPolynomial::from_laurent(&BigInt::zero(), &n, &den_poly);
        Self { num, den }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.den.is_one() && rhs.num.len() == 1 {
            let (e, c) = &rhs.num.terms[0];
            return Ok(Self { num: self.num.mul_term(&-e, &c.recip()), den: self.den.clone() });
        }
        Ok(Self::normalize(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().try_div(self)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            let num = if negate { self.num.sub(&rhs.num) } else { self.num.add(&rhs.num) };
            return Self { num, den: ExpPolynomial::one() };
        }
        let combine = |a: ExpPolynomial, b: ExpPolynomial| if negate { a.sub(&b) } else { a.add(&b) };
        if self.den == rhs.den {
            return Self::normalize(combine(self.num.clone(), rhs.num.clone()), self.den.clone());
        }
        let num = combine(self.num.mul(&rhs.den), rhs.num.mul(&self.den));
        Self::normalize(num, self.den.mul(&rhs.den))
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self { num: self.num.mul(&rhs.num), den: ExpPolynomial::one() };
        }
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl crate::field::Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn from_rational(q: &Rational) -> Self {
        Scalar::from_rational(q.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_impl(b));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| a.try_div(b).expect("division by zero Scalar"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn render_term(e: &Rational, c: &Rational) -> String {
    use alloc::format;
    if e.is_zero() {
        format!("{c}")
    } else if c.is_one() {
        format!("E({e})")
    } else if (-c).is_one() {
        format!("-E({e})")
    } else {
        format!("{c}*E({e})")
    }
}

impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let s = render_term(e, c);
            if i == 0 {
                f.write_str(&s)?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Rational `p/q` as rendered by [`Scalar`]'s `Display` (`p` when integral).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(Rational::new(n, d))
}

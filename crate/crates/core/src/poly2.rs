//! Sparse polynomials in `X, Y` over [`Scalar`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// `X^x Y^y`.
///
/// Ordered graded-lexicographically with `X > Y`, *descending*: the
/// [`Ord`] impl puts larger monomials first so that map iteration follows
/// rendering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    pub fn total(&self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.total().cmp(&self.total()).then(other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| match e {
            0 => Ok(()),
            1 => f.write_str(name),
            _ => write!(f, "{name}^{e}"),
        };
        match (self.x, self.y) {
            (0, 0) => f.write_str("1"),
            (_, 0) => part(f, "X", self.x),
            (0, _) => part(f, "Y", self.y),
            _ => {
                part(f, "X", self.x)?;
                f.write_str("*")?;
                part(f, "Y", self.y)
            }
        }
    }
}

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    X,
    Y,
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn x() -> Self {
        Self::term(Monomial::new(1, 0), Scalar::one())
    }

    pub fn y() -> Self {
        Self::term(Monomial::new(0, 1), Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::x(),
            Var::Y => Self::y(),
        }
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Rebuilds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in pairs {
            p.add_term(m, &c);
        }
        p
    }

    /// Univariate polynomial `Σ coeffs[i] v^i`.
    pub fn univariate(v: Var, coeffs: &[Scalar]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| {
            let i = i as u32;
            let m = match v {
                Var::X => Monomial::new(i, 0),
                Var::Y => Monomial::new(0, i),
            };
            (m, c.clone())
        }))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All nonzero terms in canonical order.
    pub fn coefficients(&self) -> Vec<((u32, u32), Scalar)> {
        self.terms.iter().map(|(m, c)| ((m.x, m.y), c.clone())).collect()
    }

    /// The greatest monomial with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self, grading: Grading) -> Degree {
        self.terms
            .keys()
            .map(|m| match grading {
                Grading::X => m.x,
                Grading::Y => m.y,
                Grading::Total => m.total(),
            })
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    pub fn total_degree(&self) -> Degree {
        self.degree(Grading::Total)
    }

    /// True when no monomial involves `v`.
    pub fn is_free_of(&self, v: Var) -> bool {
        self.terms.keys().all(|m| match v {
            Var::X => m.x == 0,
            Var::Y => m.y == 0,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, a)| (*m, Field::neg(a))).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &Field::neg(c));
        }
        out
    }

    /// Product without a degree cap.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = Monomial::new(ma.x + mb.x, ma.y + mb.y);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = Scalar::add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc }
    }

    pub fn checked_mul(&self, rhs: &Self, cap: u32) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.total_degree().finite(), rhs.total_degree().finite()) {
            check_cap(a + b, cap)?;
        }
        Ok(self.mul(rhs))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = Poly2::mul(&acc, self);
        }
        acc
    }

    pub fn checked_pow(&self, n: u32, cap: u32) -> Result<Self> {
        if let Some(d) = self.total_degree().finite() {
            check_cap(d.saturating_mul(n), cap)?;
        }
        Ok(self.pow(n))
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, dm) = match v {
                Var::X if m.x > 0 => (m.x, Monomial::new(m.x - 1, m.y)),
                Var::Y if m.y > 0 => (m.y, Monomial::new(m.x, m.y - 1)),
                _ => continue,
            };
            out.add_term(dm, &c.mul(&Scalar::from_int(e as i64)));
        }
        out
    }

    /// `self(image_x, image_y)`, refusing results whose predicted total
    /// degree exceeds `cap`.
    pub fn substitute(&self, image_x: &Poly2, image_y: &Poly2, cap: u32) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dx = image_x.total_degree().finite().unwrap_or(0);
        let dy = image_y.total_degree().finite().unwrap_or(0);
        let predicted = self.terms.keys().map(|m| m.x * dx + m.y * dy).max().unwrap_or(0);
        check_cap(predicted, cap)?;
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let xs = powers(image_x, max_x);
        let ys = powers(image_y, max_y);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let t = Poly2::mul(&xs[m.x as usize], &ys[m.y as usize]).scale(c);
            for (tm, tc) in &t.terms {
                out.add_term(*tm, tc);
            }
        }
        Ok(out)
    }

    /// Substitution into a polynomial in one variable: `self(image)` where
    /// `self` only involves `v`.
    pub fn compose_univariate(&self, v: Var, image: &Poly2, cap: u32) -> Result<Self> {
        match v {
            Var::X => self.substitute(image, &Poly2::y(), cap),
            Var::Y => self.substitute(&Poly2::x(), image, cap),
        }
    }

    /// Coefficients of a polynomial in `v` alone, constant term first.
    /// `None` if the other variable occurs.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<Scalar>> {
        let other = match v {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        if !self.is_free_of(other) {
            return None;
        }
        let d = self.degree(match v {
            Var::X => Grading::X,
            Var::Y => Grading::Y,
        });
        let Some(d) = d.finite() else { return Some(Vec::new()) };
        let mut out = alloc::vec![Scalar::zero(); d as usize + 1];
        for (m, c) in &self.terms {
            let e = match v {
                Var::X => m.x,
                Var::Y => m.y,
            };
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_rational)
    }
}

fn powers(p: &Poly2, n: u32) -> Vec<Poly2> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Poly2::one());
    for i in 0..n as usize {
        let next = Poly2::mul(&out[i], p);
        out.push(next);
    }
    out
}

pub(crate) fn check_cap(degree: u32, cap: u32) -> Result<()> {
    if degree > cap {
        Err(Error::DegreeCap { degree, cap })
    } else {
        Ok(())
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Poly2> for &Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: &Poly2) -> Poly2 {
                Poly2::$method(self, rhs)
            }
        }
        impl $trait<Poly2> for Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: Poly2) -> Poly2 {
                Poly2::$method(&self, &rhs)
            }
        }
        impl $trait<&Poly2> for Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: &Poly2) -> Poly2 {
                Poly2::$method(&self, rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2::neg(&self)
    }
}

impl From<Scalar> for Poly2 {
    fn from(c: Scalar) -> Self {
        Poly2::constant(c)
    }
}

fn render_term(m: &Monomial, c: &Scalar) -> String {
    use alloc::format;
    let single = c.is_single_term();
    if *m == Monomial::ONE {
        return if single { format!("{c}") } else { format!("({c})") };
    }
    if c.is_one() {
        format!("{m}")
    } else if Field::neg(c).is_one() {
        format!("-{m}")
    } else if single {
        format!("{c}*{m}")
    } else {
        format!("({c})*{m}")
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = render_term(m, c);
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

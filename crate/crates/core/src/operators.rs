//! Derivations and endomorphisms of `K[X,Y]`.
//!
//! Both are stored by their values on the generators. A derivation acts by
//! `D(P) = D(X)·∂P/∂X + D(Y)·∂P/∂Y`, an endomorphism by substitution
//! `φ(P) = P(φ(X), φ(Y))`. Composition follows the ring-map convention
//! `(φψ)(P) = φ(ψ(P))`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly2::{check_cap, Grading, Monomial, Poly2, Var};
use crate::scalars::Scalar;

/// Degree and dimension limits for operations that can blow up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub deg_cap: u32,
    pub dim_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { deg_cap: 64, dim_cap: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Derivation {
    pub dx: Poly2,
    pub dy: Poly2,
}

impl Derivation {
    pub fn new(dx: Poly2, dy: Poly2) -> Self {
        Self { dx, dy }
    }

    pub fn zero() -> Self {
        Self::new(Poly2::zero(), Poly2::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn image(&self, v: Var) -> &Poly2 {
        match v {
            Var::X => &self.dx,
            Var::Y => &self.dy,
        }
    }

    pub fn apply(&self, p: &Poly2, caps: &Caps) -> Result<Poly2> {
        let a = self.dx.checked_mul(&p.partial(Var::X), caps.deg_cap)?;
        let b = self.dy.checked_mul(&p.partial(Var::Y), caps.deg_cap)?;
        Ok(a.add(&b))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.dx.add(&rhs.dx), self.dy.add(&rhs.dy))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.dx.sub(&rhs.dx), self.dy.sub(&rhs.dy))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.dx.neg(), self.dy.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.dx.scale(c), self.dy.scale(c))
    }

    /// `[self, rhs] = self∘rhs - rhs∘self`, again a derivation.
    pub fn bracket(&self, rhs: &Self, caps: &Caps) -> Result<Self> {
        let comp = |v: Var| -> Result<Poly2> {
            let a = self.apply(rhs.image(v), caps)?;
            let b = rhs.apply(self.image(v), caps)?;
            Ok(a.sub(&b))
        };
        Ok(Self::new(comp(Var::X)?, comp(Var::Y)?))
    }

    /// `φ D φ⁻¹`, the derivation with images `φ(D(φ⁻¹(X)))`, `φ(D(φ⁻¹(Y)))`.
    pub fn conjugate(&self, phi: &Endomorphism, phi_inv: &Endomorphism, caps: &Caps) -> Result<Self> {
        let img = |v: Var| -> Result<Poly2> {
            let inner = phi_inv.image(v);
            phi.apply(&self.apply(inner, caps)?, caps)
        };
        Ok(Self::new(img(Var::X)?, img(Var::Y)?))
    }

    pub fn is_rational(&self) -> bool {
        self.dx.is_rational() && self.dy.is_rational()
    }

    pub fn max_degree(&self) -> u32 {
        let d = |p: &Poly2| p.total_degree().finite().unwrap_or(0);
        d(&self.dx).max(d(&self.dy))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dX = {} ; dY = {}", self.dx, self.dy)
    }
}

/// Which variable an elementary automorphism moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeKind {
    /// `(αX + r(Y), Y)`
    Rho,
    /// `(X, βY + s(X))`
    Theta,
}

impl ShapeKind {
    /// The variable that is moved.
    pub fn moved(self) -> Var {
        match self {
            ShapeKind::Rho => Var::X,
            ShapeKind::Theta => Var::Y,
        }
    }

    /// The variable the added polynomial depends on.
    pub fn other(self) -> Var {
        match self {
            ShapeKind::Rho => Var::Y,
            ShapeKind::Theta => Var::X,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endomorphism {
    pub im_x: Poly2,
    pub im_y: Poly2,
}

impl Endomorphism {
    pub fn new(im_x: Poly2, im_y: Poly2) -> Self {
        Self { im_x, im_y }
    }

    pub fn identity() -> Self {
        Self::new(Poly2::x(), Poly2::y())
    }

    pub fn image(&self, v: Var) -> &Poly2 {
        match v {
            Var::X => &self.im_x,
            Var::Y => &self.im_y,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, p: &Poly2, caps: &Caps) -> Result<Poly2> {
        p.substitute(&self.im_x, &self.im_y, caps.deg_cap)
    }

    /// `outer ∘ inner`, i.e. `P ↦ outer(inner(P))`.
    pub fn compose(outer: &Self, inner: &Self, caps: &Caps) -> Result<Self> {
        Ok(Self::new(outer.apply(&inner.im_x, caps)?, outer.apply(&inner.im_y, caps)?))
    }

    /// Elementary automorphism `(unit·X + r(Y), Y)` or `(X, unit·Y + s(X))`
    /// with `r`/`s` given by coefficients, constant term first.
    pub fn elementary(kind: ShapeKind, unit: Scalar, poly: &[Scalar]) -> Self {
        let moved = Poly2::var(kind.moved()).scale(&unit).add(&Poly2::univariate(kind.other(), poly));
        match kind {
            ShapeKind::Rho => Self::new(moved, Poly2::y()),
            ShapeKind::Theta => Self::new(Poly2::x(), moved),
        }
    }

    /// Splits `self` as an elementary map of the given kind: returns the unit
    /// coefficient (possibly zero) and the added one-variable polynomial.
    pub fn as_elementary(&self, kind: ShapeKind) -> Option<(Scalar, Poly2)> {
        let (fixed, moved) = match kind {
            ShapeKind::Rho => (&self.im_y, &self.im_x),
            ShapeKind::Theta => (&self.im_x, &self.im_y),
        };
        if *fixed != Poly2::var(kind.other()) {
            return None;
        }
        let unit_monomial = match kind {
            ShapeKind::Rho => Monomial::new(1, 0),
            ShapeKind::Theta => Monomial::new(0, 1),
        };
        let unit = moved.coeff(unit_monomial);
        let rest = moved.sub(&Poly2::term(unit_monomial, unit.clone()));
        if !rest.is_free_of(kind.moved()) {
            return None;
        }
        Some((unit, rest))
    }

    /// The elementary kind of `self`, `Rho` winning for the identity.
    pub fn elementary_kind(&self) -> Option<ShapeKind> {
        [ShapeKind::Rho, ShapeKind::Theta].into_iter().find(|&k| self.as_elementary(k).is_some())
    }

    pub fn is_rational(&self) -> bool {
        self.im_x.is_rational() && self.im_y.is_rational()
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X -> {} ; Y -> {}", self.im_x, self.im_y)
    }
}

/// Inverse of an elementary automorphism, e.g.
/// `(αX + r(Y), Y)⁻¹ = (α⁻¹X − α⁻¹r(Y), Y)`.
pub fn elementary_inverse(e: &Endomorphism) -> Result<Endomorphism> {
    let kind = e.elementary_kind().ok_or(Error::NotElementary)?;
    let (unit, rest) = e.as_elementary(kind).expect("kind matched");
    let inv = unit.inv().map_err(|_| Error::NonUnit)?;
    let moved = Poly2::var(kind.moved()).scale(&inv).sub(&rest.scale(&inv));
    Ok(match kind {
        ShapeKind::Rho => Endomorphism::new(moved, Poly2::y()),
        ShapeKind::Theta => Endomorphism::new(Poly2::x(), moved),
    })
}

/// Either kind of operator, for commutation tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Derivation(Derivation),
    Endomorphism(Endomorphism),
}

impl From<Derivation> for Operator {
    fn from(d: Derivation) -> Self {
        Operator::Derivation(d)
    }
}

impl From<Endomorphism> for Operator {
    fn from(e: Endomorphism) -> Self {
        Operator::Endomorphism(e)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Derivation(d) => d.fmt(f),
            Operator::Endomorphism(e) => e.fmt(f),
        }
    }
}

/// `φD = Dφ` (or `φψ = ψφ`, `[D, E] = 0`), checked on `X` and `Y`.
///
/// For a derivation and an endomorphism this suffices: `φ∘D` and `D∘φ` both
/// satisfy `L(PQ) = φ(P)L(Q) + φ(Q)L(P)`, so they agree everywhere once
/// they agree on the generators.
pub fn commute_check(lhs: &Operator, rhs: &Operator, caps: &Caps) -> Result<bool> {
    match (lhs, rhs) {
        (Operator::Derivation(a), Operator::Derivation(b)) => Ok(a.bracket(b, caps)?.is_zero()),
        (Operator::Endomorphism(a), Operator::Endomorphism(b)) => {
            Ok(Endomorphism::compose(a, b, caps)? == Endomorphism::compose(b, a, caps)?)
        }
        (Operator::Derivation(d), Operator::Endomorphism(phi))
        | (Operator::Endomorphism(phi), Operator::Derivation(d)) => {
            for v in [Var::X, Var::Y] {
                let lhs = phi.apply(d.image(v), caps)?;
                let rhs = d.apply(phi.image(v), caps)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// A finite-dimensional `D`-stable subspace with `D`'s matrix on it.
///
/// Basis elements are kept in a triangular form: element `i` has a
/// distinguished pivot monomial whose coefficient is 1 and which no later
/// element contains. Matrix column `j` holds the coordinates of `D(basis[j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubspace {
    pub basis: Vec<Poly2>,
    pub matrix: Matrix<Scalar>,
    pivots: Vec<Monomial>,
}

impl InvariantSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `p` in the basis, or `None` if `p` is outside the span.
    pub fn coordinates(&self, p: &Poly2) -> Option<Vec<Scalar>> {
        let (coords, rest) = reduce(p, &self.basis, &self.pivots);
        rest.is_zero().then_some(coords)
    }

    /// `Σ coords[i]·basis[i]`
    pub fn combine(&self, coords: &[Scalar]) -> Poly2 {
        self.basis.iter().zip(coords).fold(Poly2::zero(), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    pub fn is_rational(&self) -> bool {
        self.basis.iter().all(Poly2::is_rational)
    }
}

fn reduce(p: &Poly2, basis: &[Poly2], pivots: &[Monomial]) -> (Vec<Scalar>, Poly2) {
    let mut rest = p.clone();
    let mut coords = Vec::with_capacity(basis.len());
    for (b, m) in basis.iter().zip(pivots) {
        let c = rest.coeff(*m);
        if !c.is_zero() {
            rest = rest.sub(&b.scale(&c));
        }
        coords.push(c);
    }
    (coords, rest)
}

/// Smallest `D`-stable subspace containing `seeds`.
pub fn invariant_subspace(d: &Derivation, seeds: &[Poly2], caps: &Caps) -> Result<InvariantSubspace> {
    let mut basis: Vec<Poly2> = Vec::new();
    let mut pivots: Vec<Monomial> = Vec::new();
    let mut images: Vec<Poly2> = Vec::new();

    let insert = |p: &Poly2, basis: &mut Vec<Poly2>, pivots: &mut Vec<Monomial>| -> Result<()> {
        let (_, rest) = reduce(p, basis, pivots);
        let Some((&m, c)) = rest.leading() else { return Ok(()) };
        let deg = rest.degree(Grading::Total).finite().unwrap_or(0);
        if check_cap(deg, caps.deg_cap).is_err() {
            return Err(Error::NotLocallyFinite(format!("iterate of degree {deg} exceeds degree cap {}", caps.deg_cap)));
        }
        if basis.len() >= caps.dim_cap {
            return Err(Error::NotLocallyFinite(format!("span exceeds dimension cap {}", caps.dim_cap)));
        }
        let inv = c.inv().expect("nonzero leading coefficient");
        basis.push(rest.scale(&inv));
        pivots.push(m);
        Ok(())
    };

    for s in seeds {
        insert(s, &mut basis, &mut pivots)?;
    }
    let mut i = 0;
    while i < basis.len() {
        let img = d.apply(&basis[i], caps).map_err(|e| match e {
            Error::DegreeCap { degree, cap } => {
                Error::NotLocallyFinite(format!("iterate of degree {degree} exceeds degree cap {cap}"))
            }
            other => other,
        })?;
        insert(&img, &mut basis, &mut pivots)?;
        images.push(img);
        i += 1;
    }
    let n = basis.len();
    let mut matrix = Matrix::zeros(n, n);
    for (j, img) in images.iter().enumerate() {
        let (coords, rest) = reduce(img, &basis, &pivots);
        debug_assert!(rest.is_zero());
        for (r, c) in coords.into_iter().enumerate() {
            matrix.set(r, j, c);
        }
    }
    Ok(InvariantSubspace { basis, matrix, pivots })
}

/// Invariant subspace generated by `X` and `Y`.
pub fn generator_subspace(d: &Derivation, caps: &Caps) -> Result<InvariantSubspace> {
    invariant_subspace(d, &[Poly2::x(), Poly2::y()], caps)
}

/// Locally finite iff the span of the iterates of `X` and `Y` closes within caps.
pub fn is_locally_finite(d: &Derivation, caps: &Caps) -> bool {
    generator_subspace(d, caps).is_ok()
}

/// Locally nilpotent iff locally finite and some iterate of each generator
/// vanishes (within the dimension of the generator subspace).
pub fn is_locally_nilpotent(d: &Derivation, caps: &Caps) -> bool {
    let Ok(space) = generator_subspace(d, caps) else { return false };
    nilpotent_on_generators(d, space.dim(), caps)
}

pub(crate) fn nilpotent_on_generators(d: &Derivation, bound: usize, caps: &Caps) -> bool {
    [Var::X, Var::Y].into_iter().all(|v| {
        let mut p = Poly2::var(v);
        for _ in 0..=bound {
            if p.is_zero() {
                return true;
            }
            match d.apply(&p, caps) {
                Ok(next) => p = next,
                Err(_) => return false,
            }
        }
        p.is_zero()
    })
}

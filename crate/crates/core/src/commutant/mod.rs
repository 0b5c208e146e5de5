//! Elementary automorphisms commuting with a derivation or an endomorphism.
//!
//! For a shape `(αX + r(Y), Y)` or `(X, βY + s(X))` with `deg r, deg s ≤ d`
//! the commutation identities on `X` and `Y` become polynomial equations in
//! the unknown vector `(unit, c₀, …, c_d)`. The [`solver`] reduces them to
//! affine families of unknown vectors with a constraint on the unit; every
//! family is then spot-checked by substituting random members.

mod affine;
mod equations;
pub mod lemmas;
mod solver;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_core::RngCore;

pub use self::affine::AffineSpace;
pub use crate::operators::ShapeKind;

use crate::error::{Error, Result};
use crate::operators::{commute_check, Caps, Endomorphism, Operator};
use crate::poly2::Grading;
use crate::scalars::{Rational, Scalar};
use crate::upoly::DensePoly;
use solver::{Outcome, UNIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryShape {
    pub kind: ShapeKind,
    pub degree_bound: usize,
}

impl ElementaryShape {
    pub fn new(kind: ShapeKind, degree_bound: usize) -> Self {
        Self { kind, degree_bound }
    }

    /// Length of the unknown vector `(unit, c₀, …, c_d)`.
    pub fn unknowns(&self) -> usize {
        self.degree_bound + 2
    }

    /// Unknown vector of `phi`, or `None` if `phi` exceeds the degree bound.
    pub fn unknown_vector(&self, phi: &Endomorphism) -> Result<Option<Vec<Scalar>>> {
        let (unit, rest) = phi.as_elementary(self.kind).ok_or(Error::ShapeMismatch)?;
        let coeffs = rest.univariate_coeffs(self.kind.other()).ok_or(Error::ShapeMismatch)?;
        if coeffs.len() > self.degree_bound + 1 {
            return Ok(None);
        }
        let mut v = alloc::vec![unit];
        v.extend(coeffs);
        v.resize(self.unknowns(), Scalar::zero());
        Ok(Some(v))
    }

    pub fn endomorphism(&self, v: &[Scalar]) -> Endomorphism {
        Endomorphism::elementary(self.kind, v[0].clone(), &v[1..])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnitConstraint {
    AnyNonzero,
    /// `unit^exponent = value`
    PowerEquation { exponent: u32, value: Scalar },
    /// Ascending.
    FiniteSet(Vec<Scalar>),
}

impl UnitConstraint {
    pub fn admits(&self, unit: &Scalar) -> bool {
        if unit.is_zero() {
            return false;
        }
        match self {
            Self::AnyNonzero => true,
            Self::PowerEquation { exponent, value } => unit.pow(*exponent) == *value,
            Self::FiniteSet(values) => values.contains(unit),
        }
    }

    /// Rational unit values satisfying the constraint, when finitely many.
    pub fn rational_values(&self) -> Option<Vec<Scalar>> {
        match self {
            Self::AnyNonzero => None,
            Self::FiniteSet(values) => Some(values.clone()),
            Self::PowerEquation { exponent, value } => {
                let Some(c) = value.as_rational() else { return Some(Vec::new()) };
                let mut coeffs = alloc::vec![Rational::from_integer(0.into()); *exponent as usize + 1];
                coeffs[0] = -c;
                coeffs[*exponent as usize] = Rational::from_integer(1.into());
                let roots = DensePoly::new(coeffs).rational_roots().map(|(r, _)| r).unwrap_or_default();
                Some(roots.into_iter().map(|(r, _)| Scalar::from_rational(r)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionComponent {
    pub space: AffineSpace,
    pub unit_constraint: UnitConstraint,
    /// Coordinates required to be nonzero.
    pub open_conditions: Vec<usize>,
}

impl SolutionComponent {
    pub fn particular(&self) -> &[Scalar] {
        &self.space.particular
    }

    pub fn directions(&self) -> &[Vec<Scalar>] {
        &self.space.directions
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.space.contains(v)
            && self.unit_constraint.admits(&v[UNIT])
            && self.open_conditions.iter().all(|&i| !v[i].is_zero())
    }

    /// Index of the direction that moves the unit (only the first can).
    fn unit_direction(&self) -> Option<usize> {
        self.space.directions.first().filter(|d| !d[UNIT].is_zero()).map(|_| 0)
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.space.is_subset_of(&other.space)
            && (other.unit_constraint == UnitConstraint::AnyNonzero || self.unit_constraint == other.unit_constraint)
    }

    /// Concrete members with random free parameters; `None` entries for the
    /// unit are skipped when no rational value satisfies the constraint.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<Vec<Scalar>> {
        let k = self.space.dim();
        let unit_dir = self.unit_direction();
        let values = self.unit_constraint.rational_values();
        let mut out = Vec::new();
        let mut attempts = 0;
        while out.len() < count && attempts < 20 * count {
            attempts += 1;
            let mut params: Vec<Scalar> = (0..k).map(|_| small_rational(rng)).collect();
            if let Some(i) = unit_dir {
                // pivot entry is 1 and the particular vanishes there
                params[i] = match &values {
                    Some(vals) if vals.is_empty() => return out,
                    Some(vals) => vals[rng.next_u32() as usize % vals.len()].clone(),
                    None => nonzero_small_rational(rng),
                };
            }
            let v = self.space.point(&params);
            if self.contains_vector(&v) {
                out.push(v);
            }
        }
        out
    }
}

fn small_rational<R: RngCore + ?Sized>(rng: &mut R) -> Scalar {
    let num = (rng.next_u32() % 19) as i64 - 9;
    let den = (rng.next_u32() % 4) as i64 + 1;
    Scalar::from_rational(Rational::new(num.into(), den.into()))
}

fn nonzero_small_rational<R: RngCore + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let s = small_rational(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Rank of the final linear system of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RankReport {
    pub unknowns: usize,
    pub rank: usize,
    pub dimension: usize,
}

/// Equations the solver could not reduce, rendered for inspection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residual {
    pub equations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub shape: ElementaryShape,
    /// Sorted, pairwise non-nested.
    pub components: Vec<SolutionComponent>,
    pub residual: Option<Residual>,
    /// One entry per component.
    pub rank_report: Vec<RankReport>,
}

impl SolutionSet {
    pub fn is_complete(&self) -> bool {
        self.residual.is_none()
    }

    /// Errors with the residual system if the solver stalled.
    pub fn require_complete(self) -> Result<Self> {
        match &self.residual {
            None => Ok(self),
            Some(r) => Err(Error::SolverIncomplete(r.equations.join("; "))),
        }
    }

    fn from_parts(shape: ElementaryShape, mut parts: Vec<(SolutionComponent, usize)>, residual: Option<Residual>) -> Self {
        parts.sort();
        parts.dedup_by(|a, b| a.0 == b.0);
        let keep: Vec<bool> = (0..parts.len())
            .map(|i| !(0..parts.len()).any(|j| j != i && parts[i].0.is_subset_of(&parts[j].0)))
            .collect();
        let (components, ranks): (Vec<_>, Vec<_>) =
            parts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).unzip();
        let rank_report = components
            .iter()
            .zip(ranks)
            .map(|(c, rank)| RankReport { unknowns: shape.unknowns(), rank, dimension: c.space.dim() })
            .collect();
        Self { shape, components, residual, rank_report }
    }

    /// Members of degree at most `d` (`d` not above the current bound).
    pub fn restrict_degree(&self, d: usize) -> Self {
        let d = d.min(self.shape.degree_bound);
        let n = d + 2;
        let dropped: Vec<usize> = (n..self.shape.unknowns()).collect();
        let parts = self
            .components
            .iter()
            .filter_map(|c| {
                let space = c.space.with_zero_coordinates(&dropped)?.truncate(n);
                let rank = n - space.dim();
                let comp = SolutionComponent {
                    space,
                    unit_constraint: c.unit_constraint.clone(),
                    open_conditions: c.open_conditions.clone(),
                };
                normalize_unit(comp).map(|c| (c, rank))
            })
            .collect();
        Self::from_parts(ElementaryShape::new(self.shape.kind, d), parts, self.residual.clone())
    }
}

/// Drops components whose unit is pinned to an inadmissible value and
/// relaxes the constraint when the unit is pinned to an admissible one.
fn normalize_unit(mut c: SolutionComponent) -> Option<SolutionComponent> {
    if c.unit_direction().is_none() {
        if !c.unit_constraint.admits(&c.space.particular[UNIT]) {
            return None;
        }
        c.unit_constraint = UnitConstraint::AnyNonzero;
    }
    Some(c)
}

fn unknown_name(i: usize) -> String {
    if i == UNIT {
        String::from("unit")
    } else {
        format!("c{}", i - 1)
    }
}

/// Default degree bound: `max(8, 2·(1 + total degree of the target's images))`.
pub fn default_degree_bound(target: &Operator) -> usize {
    let deg = |p: &crate::poly2::Poly2| p.degree(Grading::Total).finite().unwrap_or(0) as usize;
    let top = match target {
        Operator::Derivation(d) => deg(&d.dx).max(deg(&d.dy)),
        Operator::Endomorphism(e) => deg(&e.im_x).max(deg(&e.im_y)),
    };
    8usize.max(2 * (1 + top))
}

const SOUNDNESS_SAMPLES: usize = 5;
const DEFAULT_SEED: u64 = 0x7a3e_5eed;

/// Elementary maps of `shape` commuting with `target`, checked with a fixed seed.
pub fn elementary_commutant(target: &Operator, shape: ElementaryShape, caps: &Caps) -> Result<SolutionSet> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    elementary_commutant_with_rng(target, shape, caps, &mut rng)
}

pub fn elementary_commutant_with_rng<R: RngCore + ?Sized>(
    target: &Operator,
    shape: ElementaryShape,
    caps: &Caps,
    rng: &mut R,
) -> Result<SolutionSet> {
    let n = shape.unknowns();
    let eqs = equations::commutation_equations(target, &shape, caps)?;
    let mut parts = Vec::new();
    let mut stalled = Vec::new();
    for outcome in solver::solve_system(eqs, n) {
        match outcome {
            Outcome::Solved(raw) => {
                let Some(space) = AffineSpace::from_equations(&raw.linear, n) else { continue };
                let rank = n - space.dim();
                let comp = SolutionComponent { space, unit_constraint: raw.unit, open_conditions: alloc::vec![UNIT] };
                if let Some(comp) = normalize_unit(comp) {
                    parts.push((comp, rank));
                }
            }
            Outcome::Stalled { equations, linear } => {
                stalled.extend(equations.iter().map(|e| e.render(&unknown_name)));
                stalled.extend(linear.iter().map(|row| {
                    let coeffs = &row[..n];
                    crate::mpoly::MPoly::from_linear(coeffs, &row[n]).render(&unknown_name)
                }));
            }
        }
    }
    let residual = (!stalled.is_empty()).then_some(Residual { equations: stalled });
    let set = SolutionSet::from_parts(shape, parts, residual);
    check_soundness(target, &set, caps, rng)?;
    Ok(set)
}

/// Substitutes random members of every component into `commute_check`.
pub fn check_soundness<R: RngCore + ?Sized>(target: &Operator, set: &SolutionSet, caps: &Caps, rng: &mut R) -> Result<()> {
    for (i, c) in set.components.iter().enumerate() {
        for v in c.sample(rng, SOUNDNESS_SAMPLES) {
            let phi = set.shape.endomorphism(&v);
            if !commute_check(target, &Operator::Endomorphism(phi.clone()), caps)? {
                return Err(Error::UnsoundComponent(format!("component {i}: {phi}")));
            }
        }
    }
    Ok(())
}

/// Whether `phi` belongs to some component of `set`.
pub fn contains(set: &SolutionSet, phi: &Endomorphism) -> Result<bool> {
    let Some(v) = set.shape.unknown_vector(phi)? else { return Ok(false) };
    Ok(set.components.iter().any(|c| c.contains_vector(&v)))
}

/// Structural equality of normalized solution sets.
pub fn solution_set_equal(lhs: &SolutionSet, rhs: &SolutionSet) -> Result<bool> {
    if lhs.shape != rhs.shape {
        return Err(Error::IncomparableShapes);
    }
    Ok(lhs.components == rhs.components && lhs.residual == rhs.residual)
}

//! JSON views of solution sets, verification reports and operator results.
//! Scalars and polynomials appear in their canonical text rendering.

use std::collections::BTreeMap;

use serde::Serialize;
use tame_core::jordan::{JordanCertificate, SpectrumReport};
use tame_core::{ElementaryShape, Scalar, ShapeKind, SolutionComponent, SolutionSet, UnitConstraint, Var};

use crate::theorems::{Expectation, Side, Source};
use crate::verify::{CheckOutcome, FamilyCheck, SidePair, Status, Timings, VerificationReport};

fn shape_name(kind: ShapeKind) -> &'static str {
    match kind {
        ShapeKind::Rho => "RHO",
        ShapeKind::Theta => "THETA",
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnitConstraintJson {
    AnyNonzero,
    PowerEquation { exponent: u32, value: String },
    FiniteSet { values: Vec<String> },
}

impl From<&UnitConstraint> for UnitConstraintJson {
    fn from(u: &UnitConstraint) -> Self {
        match u {
            UnitConstraint::AnyNonzero => Self::AnyNonzero,
            UnitConstraint::PowerEquation { exponent, value } => {
                Self::PowerEquation { exponent: *exponent, value: value.to_string() }
            }
            UnitConstraint::FiniteSet(values) => Self::FiniteSet { values: strings(values) },
        }
    }
}

#[derive(Serialize)]
pub struct ComponentJson {
    /// General member with free parameters `t1, t2, …`.
    pub member: String,
    pub particular: Vec<String>,
    pub directions: Vec<Vec<String>>,
    pub unit_constraint: UnitConstraintJson,
    pub open_conditions: Vec<usize>,
}

#[derive(Serialize)]
pub struct RankJson {
    pub unknowns: usize,
    pub rank: usize,
    pub dimension: usize,
}

#[derive(Serialize)]
pub struct ResidualJson {
    pub equations: Vec<String>,
}

#[derive(Serialize)]
pub struct SolutionSetJson {
    pub shape: &'static str,
    pub degree_bound: usize,
    pub components: Vec<ComponentJson>,
    pub residual: Option<ResidualJson>,
    pub rank_report: Vec<RankJson>,
}

fn linear_form(comp: &SolutionComponent, j: usize) -> Vec<(Option<usize>, Scalar)> {
    let mut out = Vec::new();
    if !comp.particular()[j].is_zero() {
        out.push((None, comp.particular()[j].clone()));
    }
    for (i, d) in comp.directions().iter().enumerate() {
        if !d[j].is_zero() {
            out.push((Some(i + 1), d[j].clone()));
        }
    }
    out
}

fn render_linear(terms: &[(Option<usize>, Scalar)]) -> String {
    let mut s = String::new();
    for (k, (param, c)) in terms.iter().enumerate() {
        let piece = match param {
            None if c.is_single_term() => c.to_string(),
            None => format!("({c})"),
            Some(i) if c.is_one() => format!("t{i}"),
            Some(i) if c.neg().is_one() => format!("-t{i}"),
            Some(i) if c.is_single_term() => format!("{c}*t{i}"),
            Some(i) => format!("({c})*t{i}"),
        };
        if k == 0 {
            s.push_str(&piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(&piece);
        }
    }
    s
}

/// e.g. `(t1*X + t2*Y^2, Y)`.
pub fn describe_component(shape: &ElementaryShape, comp: &SolutionComponent) -> String {
    let moved = match shape.kind {
        ShapeKind::Rho => "X",
        ShapeKind::Theta => "Y",
    };
    let other = match shape.kind.other() {
        Var::X => "X",
        Var::Y => "Y",
    };
    let mut pieces = Vec::new();
    for j in 0..shape.unknowns() {
        let terms = linear_form(comp, j);
        if terms.is_empty() {
            continue;
        }
        let mono = match j {
            0 => moved.to_string(),
            1 => String::new(),
            2 => other.to_string(),
            k => format!("{other}^{}", k - 1),
        };
        let coeff = render_linear(&terms);
        let piece = if mono.is_empty() {
            if terms.len() > 1 { format!("({coeff})") } else { coeff }
        } else if terms.len() > 1 || coeff.contains(' ') {
            format!("({coeff})*{mono}")
        } else if coeff == "1" {
            mono
        } else if coeff == "-1" {
            format!("-{mono}")
        } else {
            format!("{coeff}*{mono}")
        };
        pieces.push(piece);
    }
    let mut image = String::new();
    for (k, p) in pieces.iter().enumerate() {
        if k == 0 {
            image.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            image.push_str(" - ");
            image.push_str(rest);
        } else {
            image.push_str(" + ");
            image.push_str(p);
        }
    }
    if image.is_empty() {
        image.push('0');
    }
    match shape.kind {
        ShapeKind::Rho => format!("({image}, Y)"),
        ShapeKind::Theta => format!("(X, {image})"),
    }
}

impl From<&SolutionSet> for SolutionSetJson {
    fn from(s: &SolutionSet) -> Self {
        Self {
            shape: shape_name(s.shape.kind),
            degree_bound: s.shape.degree_bound,
            components: s
                .components
                .iter()
                .map(|c| ComponentJson {
                    member: describe_component(&s.shape, c),
                    particular: strings(c.particular()),
                    directions: c.directions().iter().map(|d| strings(d)).collect(),
                    unit_constraint: (&c.unit_constraint).into(),
                    open_conditions: c.open_conditions.clone(),
                })
                .collect(),
            residual: s.residual.as_ref().map(|r| ResidualJson { equations: r.equations.clone() }),
            rank_report: s
                .rank_report
                .iter()
                .map(|r| RankJson { unknowns: r.unknowns, rank: r.rank, dimension: r.dimension })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SidePairJson {
    #[serde(rename = "RHO")]
    pub rho: SolutionSetJson,
    #[serde(rename = "THETA")]
    pub theta: SolutionSetJson,
}

impl From<&SidePair> for SidePairJson {
    fn from(p: &SidePair) -> Self {
        Self { rho: (&p.rho).into(), theta: (&p.theta).into() }
    }
}

#[derive(Serialize)]
pub struct FormJson {
    pub family: &'static str,
    pub params: BTreeMap<String, String>,
    pub derivation: String,
}

#[derive(Serialize)]
pub struct FamilyCheckJson {
    pub description: String,
    pub source: Source,
    pub side: Side,
    pub shape: &'static str,
    pub expectation: Expectation,
    pub instances: Vec<String>,
    pub commuting: usize,
    pub contained: bool,
    pub solver_agrees: bool,
    pub outcome: CheckOutcome,
}

impl From<&FamilyCheck> for FamilyCheckJson {
    fn from(c: &FamilyCheck) -> Self {
        Self {
            description: c.description.clone(),
            source: c.source,
            side: c.side,
            shape: shape_name(c.shape),
            expectation: c.expectation,
            instances: c.instances.iter().map(ToString::to_string).collect(),
            commuting: c.commuting,
            contained: c.contained,
            solver_agrees: c.solver_agrees,
            outcome: c.outcome,
        }
    }
}

#[derive(Serialize)]
pub struct TimingsJson {
    pub exp: f64,
    pub d_side: f64,
    pub exp_side: f64,
    pub checks: f64,
}

impl From<&Timings> for TimingsJson {
    fn from(t: &Timings) -> Self {
        Self { exp: t.exp_ms, d_side: t.d_side_ms, exp_side: t.exp_side_ms, checks: t.checks_ms }
    }
}

#[derive(Serialize)]
pub struct VerificationReportJson {
    pub form: FormJson,
    pub degree_bound: usize,
    pub status: Status,
    pub error: Option<String>,
    pub exp_automorphism: Option<String>,
    pub equal: bool,
    pub d_side: Option<SidePairJson>,
    pub exp_side: Option<SidePairJson>,
    pub expected_family_checks: Vec<FamilyCheckJson>,
    pub discrepancy_flags: Vec<String>,
    /// Milliseconds per stage; only with `--timings`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<TimingsJson>,
}

impl VerificationReportJson {
    pub fn new(r: &VerificationReport, with_timings: bool) -> Self {
        Self {
            form: FormJson {
                family: r.form.family.name(),
                params: r.form.display_params(),
                derivation: r.form.derivation.to_string(),
            },
            degree_bound: r.degree_bound,
            status: r.status(),
            error: r.error.as_ref().map(ToString::to_string),
            exp_automorphism: r.exp_automorphism.as_ref().map(ToString::to_string),
            equal: r.equal,
            d_side: r.d_side.as_ref().map(Into::into),
            exp_side: r.exp_side.as_ref().map(Into::into),
            expected_family_checks: r.expected_family_checks.iter().map(Into::into).collect(),
            discrepancy_flags: r.discrepancy_flags.clone(),
            timings_ms: with_timings.then(|| (&r.timings).into()),
        }
    }
}

#[derive(Serialize)]
pub struct SpectrumJson {
    pub eigenvalue: String,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct JordanJson {
    pub derivation: String,
    pub semisimple: String,
    pub nilpotent: String,
    pub spectrum: Vec<SpectrumJson>,
    pub sum_matches: bool,
    pub bracket_zero: bool,
    pub nilpotent_part_lnd: bool,
    pub semisimple_diagonalizable: bool,
}

impl JordanJson {
    pub fn new(d: String, s: String, n: String, spectrum: &SpectrumReport, cert: &JordanCertificate) -> Self {
        Self {
            derivation: d,
            semisimple: s,
            nilpotent: n,
            spectrum: spectrum
                .eigenvalues
                .iter()
                .map(|(l, m)| SpectrumJson { eigenvalue: l.to_string(), multiplicity: *m })
                .collect(),
            sum_matches: cert.sum_matches,
            bracket_zero: cert.bracket_zero,
            nilpotent_part_lnd: cert.nilpotent_part_lnd,
            semisimple_diagonalizable: cert.semisimple_diagonalizable,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tame_core::commutant::AffineSpace;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn component_rendering() {
        let shape = ElementaryShape::new(ShapeKind::Rho, 2);
        // unit = 1 + 2 t1, c0 = t1, c1 = t2
        let comp = SolutionComponent {
            space: AffineSpace::new(
                vec![s(1), s(0), s(0), s(0)],
                vec![vec![s(2), s(1), s(0), s(0)], vec![s(0), s(0), s(1), s(0)]],
            ),
            unit_constraint: UnitConstraint::AnyNonzero,
            open_conditions: vec![0],
        };
        assert_eq!(describe_component(&shape, &comp), "(t1*X + (-1/2 + 1/2*t1) + t2*Y, Y)");
        let id = SolutionComponent {
            space: AffineSpace::new(vec![s(1), s(0), s(0), s(0)], vec![]),
            unit_constraint: UnitConstraint::AnyNonzero,
            open_conditions: vec![0],
        };
        assert_eq!(describe_component(&ElementaryShape::new(ShapeKind::Theta, 2), &id), "(X, Y)");
    }
}

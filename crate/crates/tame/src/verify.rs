//! Per-form verification: exp(D), both commutants on both sides, and the
//! expected-family probes.

use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tame_core::commutant::{elementary_commutant_with_rng, AffineSpace};
use tame_core::operators::commute_check;
use tame_core::{
    contains, exp_derivation, solution_set_equal, Caps, ElementaryShape, Endomorphism, Operator, Scalar, ShapeKind,
    SolutionSet, UnitConstraint,
};

use crate::registry::{standard_registry, NormalForm};
use crate::theorems::{expected_families, flag_note, Expectation, FamilyTemplate, Side, Source};

pub const DEFAULT_SEED: u64 = 0x7a3e_5eed;
pub const DEFAULT_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub degree_bound: usize,
    pub caps: Caps,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { degree_bound: DEFAULT_DEGREE, caps: Caps::default(), seed: DEFAULT_SEED }
    }
}

impl Options {
    pub fn solve(&self, target: &Operator, kind: ShapeKind) -> tame_core::Result<SolutionSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        elementary_commutant_with_rng(target, ElementaryShape::new(kind, self.degree_bound), &self.caps, &mut rng)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidePair {
    pub rho: SolutionSet,
    pub theta: SolutionSet,
}

impl SidePair {
    fn compute(target: &Operator, opts: &Options) -> tame_core::Result<Self> {
        Ok(Self { rho: opts.solve(target, ShapeKind::Rho)?, theta: opts.solve(target, ShapeKind::Theta)? })
    }

    pub fn get(&self, kind: ShapeKind) -> &SolutionSet {
        match kind {
            ShapeKind::Rho => &self.rho,
            ShapeKind::Theta => &self.theta,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.rho.is_complete() && self.theta.is_complete()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    /// The verdict matches the expectation.
    Confirmed,
    /// A printed family failed substitution; a discrepancy flag was raised.
    Flagged,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub description: String,
    pub reference: String,
    pub printed: String,
    pub source: Source,
    pub side: Side,
    pub shape: ShapeKind,
    pub expectation: Expectation,
    pub instances: Vec<Endomorphism>,
    /// Instances for which the commutation identity holds.
    pub commuting: usize,
    /// Every instance commutes (for `EqualsCommutant`: the commutant is exactly the family).
    pub contained: bool,
    /// Solver membership matched substitution on every instance.
    pub solver_agrees: bool,
    pub outcome: CheckOutcome,
    pub flag: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Timings {
    pub exp_ms: f64,
    pub d_side_ms: f64,
    pub exp_side_ms: f64,
    pub checks_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub form: NormalForm,
    pub degree_bound: usize,
    pub d_side: Option<SidePair>,
    pub exp_side: Option<SidePair>,
    pub exp_automorphism: Option<Endomorphism>,
    pub equal: bool,
    pub expected_family_checks: Vec<FamilyCheck>,
    pub discrepancy_flags: Vec<String>,
    pub timings: Timings,
    /// Solver, cap or exponential failure; the other fields hold what was computed.
    pub error: Option<tame_core::Error>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Error,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        if self.error.is_some() {
            Status::Error
        } else if self.equal && self.expected_family_checks.iter().all(|c| c.outcome != CheckOutcome::Failed) {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn verify_form(form: &NormalForm, opts: &Options) -> VerificationReport {
    let mut report = VerificationReport {
        form: form.clone(),
        degree_bound: opts.degree_bound,
        d_side: None,
        exp_side: None,
        exp_automorphism: None,
        equal: false,
        expected_family_checks: Vec::new(),
        discrepancy_flags: Vec::new(),
        timings: Timings::default(),
        error: None,
    };
    if let Err(e) = run(form, opts, &mut report) {
        report.error = Some(e);
    }
    report
}

fn run(form: &NormalForm, opts: &Options, report: &mut VerificationReport) -> tame_core::Result<()> {
    let d = Operator::Derivation(form.derivation.clone());
    let t = Instant::now();
    let psi = exp_derivation(&form.derivation, &opts.caps)?;
    report.timings.exp_ms = ms(t);
    report.exp_automorphism = Some(psi.automorphism.clone());
    let psi = Operator::Endomorphism(psi.automorphism);

    let t = Instant::now();
    let d_side = SidePair::compute(&d, opts)?;
    report.timings.d_side_ms = ms(t);
    let t = Instant::now();
    let exp_side = SidePair::compute(&psi, opts)?;
    report.timings.exp_side_ms = ms(t);
    report.equal = solution_set_equal(&d_side.rho, &exp_side.rho)? && solution_set_equal(&d_side.theta, &exp_side.theta)?;
    let complete = d_side.is_complete() && exp_side.is_complete();
    report.d_side = Some(d_side);
    report.exp_side = Some(exp_side);
    if !complete {
        return Err(tame_core::Error::SolverIncomplete(format!("{}: residual equations remain", form.label())));
    }

    let t = Instant::now();
    let (d_side, exp_side) = (report.d_side.as_ref().expect("set"), report.exp_side.as_ref().expect("set"));
    for template in expected_families(form) {
        let (target, sets) = match template.side {
            Side::Derivation => (&d, d_side),
            Side::Exponential => (&psi, exp_side),
        };
        let check = run_check(&template, target, sets.get(template.kind), &opts.caps)?;
        if let Some(flag) = &check.flag {
            if !report.discrepancy_flags.contains(flag) {
                report.discrepancy_flags.push(flag.clone());
            }
        }
        report.expected_family_checks.push(check);
    }
    report.timings.checks_ms = ms(t);
    Ok(())
}

/// Affine hull of the unknown vectors of `members`.
fn hull(set: &SolutionSet, members: &[Endomorphism]) -> tame_core::Result<Option<AffineSpace>> {
    let mut vectors = Vec::new();
    for m in members {
        match set.shape.unknown_vector(m)? {
            Some(v) => vectors.push(v),
            None => return Ok(None),
        }
    }
    let base = vectors[0].clone();
    let dirs = vectors[1..].iter().map(|v| v.iter().zip(&base).map(|(a, b)| a.sub(b)).collect::<Vec<Scalar>>()).collect();
    Ok(Some(AffineSpace::new(base, dirs)))
}

fn run_check(
    template: &FamilyTemplate,
    target: &Operator,
    set: &SolutionSet,
    caps: &Caps,
) -> tame_core::Result<FamilyCheck> {
    let instances = template.instances();
    let mut commuting = 0;
    let mut solver_agrees = true;
    for phi in &instances {
        let holds = commute_check(target, &Operator::Endomorphism(phi.clone()), caps)?;
        commuting += usize::from(holds);
        if set.shape.unknown_vector(phi)?.is_some() && contains(set, phi)? != holds {
            solver_agrees = false;
        }
    }
    let all = commuting == instances.len();
    let contained = match template.expectation {
        Expectation::Contained | Expectation::NotContained => all,
        Expectation::EqualsCommutant => {
            all && match hull(set, &instances)? {
                Some(h) => {
                    set.components.len() == 1
                        && set.components[0].space == h
                        && set.components[0].unit_constraint == UnitConstraint::AnyNonzero
                }
                None => false,
            }
        }
    };
    let confirmed = match template.expectation {
        Expectation::Contained | Expectation::EqualsCommutant => contained,
        Expectation::NotContained => commuting == 0,
    };
    let (outcome, flag) = if !solver_agrees {
        (CheckOutcome::Failed, None)
    } else if confirmed {
        (CheckOutcome::Confirmed, None)
    } else if template.source == Source::Derived {
        (CheckOutcome::Failed, None)
    } else {
        match template.flag_key {
            Some(key) => (CheckOutcome::Flagged, Some(flag_note(key))),
            None => (
                CheckOutcome::Failed,
                Some(format!("{}: printed family {} fails substitution", template.reference, template.printed)),
            ),
        }
    };
    Ok(FamilyCheck {
        description: template.description(),
        reference: template.reference.clone(),
        printed: template.printed.clone(),
        source: template.source,
        side: template.side,
        shape: template.kind,
        expectation: template.expectation,
        instances,
        commuting,
        contained,
        solver_agrees,
        outcome,
        flag,
    })
}

/// Verifies every form of the standard registry, in registry order.
pub fn verify_all(opts: &Options) -> Vec<VerificationReport> {
    standard_registry().par_iter().map(|f| verify_form(f, opts)).collect()
}

/// Distinct discrepancy flags over `reports`, in first-seen order.
pub fn distinct_flags(reports: &[VerificationReport]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for f in reports.iter().flat_map(|r| &r.discrepancy_flags) {
        if !out.contains(f) {
            out.push(f.clone());
        }
    }
    out
}

//! Expected generator families per normal form, as parameterized
//! endomorphism templates with their source.
//!
//! Printed families come from the theorem statements. Derived families are
//! probes whose verdict is fixed in advance. Every template is instantiated
//! at concrete parameter values and checked by substitution.

use num_traits::{One, Zero};
use serde::Serialize;
use tame_core::scalars::{rational, Rational};
use tame_core::{Endomorphism, Poly2, Scalar, ShapeKind, Var};

use crate::registry::{is_positive_integer, rational_roots_of_unity, symmetry_order, Family, NormalForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Commutes with `D`.
    Derivation,
    /// Commutes with `exp(D)`.
    Exponential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Printed,
    /// Printed, with the proof given only by citation.
    StatementSourced,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Contained,
    NotContained,
    /// The commutant of the template's shape is exactly this family.
    EqualsCommutant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Any,
    Nonzero,
    RootsOfUnity(u32),
    PolyIn(Var),
}

type Builder = Box<dyn Fn(&[Poly2]) -> Endomorphism + Send + Sync>;

pub struct FamilyTemplate {
    pub reference: String,
    /// The family as written in the source.
    pub printed: String,
    pub source: Source,
    pub side: Side,
    pub kind: ShapeKind,
    pub expectation: Expectation,
    /// Discrepancy key raised when a printed family fails.
    pub flag_key: Option<&'static str>,
    pub params: Vec<(&'static str, Domain)>,
    build: Builder,
}

impl std::fmt::Debug for FamilyTemplate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FamilyTemplate").field("reference", &self.reference).field("printed", &self.printed).finish()
    }
}

const SCALAR_POOL: [(i64, i64); 3] = [(2, 1), (-1, 3), (3, 1)];

fn poly_pool(v: Var) -> [Poly2; 3] {
    let t = Poly2::var(v);
    let s = |n: i64, d: i64| Poly2::constant(Scalar::from_rational(rational(n, d)));
    [s(1, 1).add(&t), s(2, 1).mul(&t.pow(2)).sub(&t), t.pow(3).add(&s(1, 2))]
}

impl FamilyTemplate {
    pub fn description(&self) -> String {
        format!("{}: {}", self.reference, self.printed)
    }

    /// Up to three members; parameter `j` of member `k` takes the
    /// `(k + j)`-th pool value, so scalar parameters vary independently.
    pub fn instances(&self) -> Vec<Endomorphism> {
        let count = if self.params.is_empty() { 1 } else { 3 };
        let mut out: Vec<Endomorphism> = Vec::new();
        for k in 0..count {
            let values: Vec<Poly2> = self
                .params
                .iter()
                .enumerate()
                .map(|(j, (_, dom))| match dom {
                    Domain::Any | Domain::Nonzero => {
                        let (n, d) = SCALAR_POOL[(k + j) % 3];
                        Poly2::constant(Scalar::from_rational(rational(n, d)))
                    }
                    Domain::RootsOfUnity(s) => {
                        let roots = rational_roots_of_unity(*s);
                        Poly2::constant(Scalar::from_rational(roots[k % roots.len()].clone()))
                    }
                    Domain::PolyIn(v) => poly_pool(*v)[(k + j) % 3].clone(),
                })
                .collect();
            let e = (self.build)(&values);
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }
}

/// The discrepancy note for a flag key.
pub fn flag_note(key: &str) -> String {
    let body = match key {
        "Theorem 3.4 / 4.4" => {
            "printed generator (βX, Y) with β ≠ 0 fails substitution unless β^m = 1: \
             the Y-component of the commutation identity reads amY + β^m X^m = amY + X^m; \
             the substitution-verified unit constraint is β^m = 1"
        }
        "Theorem 3.6(1)" => {
            "statement lists (αX + γY, Y) and (X, βY + εX) for ab ≠ 0, \
             but the proof via Lemma 3.5 gives r(Y) = γY^(a/b) (and s(X) = εX^(b/a)); \
             for a ≠ b the printed linear families do not commute (at a = 2, b = 1: \
             (X + γY^2, Y) is contained, (X + γY, Y) with γ ≠ 0 is not)"
        }
        "Theorem 3.8 / 4.6" => {
            "statement writes D = (aX + b)∂/∂X + aY∂/∂Y while the ρ-case proof uses D(X) = aX + Y \
             and the θ-case proof uses D(X) = aX + 1; with D(X) = aX + 1 the family (X, βY + aεX + ε) \
             is contained, with D(X) = aX + Y the ρ-commutant is exactly (X + γY, Y) and the θ-commutant is trivial"
        }
        _ => "printed family fails substitution",
    };
    format!("{key}: {body}")
}

fn sc(r: &Rational) -> Poly2 {
    Poly2::constant(Scalar::from_rational(r.clone()))
}

fn rho(unit: &Poly2, r: &Poly2) -> Endomorphism {
    Endomorphism::new(unit.mul(&Poly2::x()).add(r), Poly2::y())
}

fn theta(unit: &Poly2, s: &Poly2) -> Endomorphism {
    Endomorphism::new(Poly2::x(), unit.mul(&Poly2::y()).add(s))
}

struct Draft {
    reference: String,
    printed: String,
    source: Source,
    side: Side,
    kind: ShapeKind,
    expectation: Expectation,
    flag_key: Option<&'static str>,
    params: Vec<(&'static str, Domain)>,
}

fn printed(reference: &str, side: Side, kind: ShapeKind, text: &str) -> Draft {
    Draft {
        reference: reference.to_string(),
        printed: text.to_string(),
        source: Source::Printed,
        side,
        kind,
        expectation: Expectation::Contained,
        flag_key: None,
        params: Vec::new(),
    }
}

fn derived(reference: &str, kind: ShapeKind, expectation: Expectation, text: &str) -> Draft {
    Draft { source: Source::Derived, expectation, ..printed(reference, Side::Derivation, kind, text) }
}

impl Draft {
    fn with(mut self, name: &'static str, dom: Domain) -> Self {
        self.params.push((name, dom));
        self
    }
    fn flag(mut self, key: &'static str) -> Self {
        self.flag_key = Some(key);
        self
    }
    fn source(mut self, s: Source) -> Self {
        self.source = s;
        self
    }
    fn build(self, f: impl Fn(&[Poly2]) -> Endomorphism + Send + Sync + 'static) -> FamilyTemplate {
        FamilyTemplate {
            reference: self.reference,
            printed: self.printed,
            source: self.source,
            side: self.side,
            kind: self.kind,
            expectation: self.expectation,
            flag_key: self.flag_key,
            params: self.params,
            build: Box::new(f),
        }
    }
}

use Domain::{Any, Nonzero, PolyIn};
use ShapeKind::{Rho, Theta};

/// Templates for `form`, in a fixed order.
pub fn expected_families(form: &NormalForm) -> Vec<FamilyTemplate> {
    let one = Poly2::one();
    let mut out = Vec::new();
    let (dx, dy) = (Side::Derivation, Side::Exponential);
    match form.family {
        Family::TriangularF => {
            let f = form.f();
            let deg = f.total_degree().finite().unwrap_or(0);
            let add_s = |reference: &str, side: Side, name: &'static str| {
                let one = one.clone();
                printed(reference, side, Theta, &format!("(X, Y + {name}(X))"))
                    .with(name, PolyIn(Var::X))
                    .build(move |p| theta(&one, &p[0]))
            };
            if deg == 0 {
                for (reference, side) in [("Theorem 3.1(1)", dx), ("Theorem 4.2(2)", dy)] {
                    out.push(
                        printed(reference, side, Rho, "(αX + γ, Y)")
                            .with("α", Nonzero)
                            .with("γ", Any)
                            .build(|p| rho(&p[0], &p[1])),
                    );
                    out.push(add_s(reference, side, "s"));
                }
            } else if deg == 1 {
                out.push(add_s("Theorem 3.1(2)", dx, "s"));
                out.push(add_s("Theorem 4.2(1)", dy, "s"));
            } else {
                let s = symmetry_order(&f);
                for (reference, side, source) in
                    [("Theorem 3.2", dx, Source::StatementSourced), ("Theorem 4.2(3)", dy, Source::Printed)]
                {
                    let mut t = add_s(reference, side, "r");
                    t.source = source;
                    out.push(t);
                    if s >= 2 {
                        out.push(
                            printed(reference, side, Rho, &format!("(λX, Y), λ^{s} = 1"))
                                .source(source)
                                .with("λ", Domain::RootsOfUnity(s))
                                .build(|p| rho(&p[0], &Poly2::zero())),
                        );
                    }
                }
            }
        }
        Family::FlowB => {
            if !form.param("b").is_zero() {
                for (reference, side) in [("Theorem 3.3(1)", dx), ("Theorem 4.3", dy)] {
                    let one_a = one.clone();
                    out.push(printed(reference, side, Rho, "(X + β, Y)").with("β", Any).build(move |p| rho(&one_a, &p[0])));
                    out.push(
                        printed(reference, side, Theta, "(X, γY)")
                            .with("γ", Nonzero)
                            .build(|p| theta(&p[0], &Poly2::zero())),
                    );
                }
            } else {
                let one_a = one.clone();
                out.push(
                    printed("Theorem 3.3(2)", dx, Rho, "(X + g(Y), Y)")
                        .with("g", PolyIn(Var::Y))
                        .build(move |p| rho(&one_a, &p[0])),
                );
                out.push(
                    printed("Theorem 3.3(2)", dx, Theta, "(X, αY + β)")
                        .with("α", Nonzero)
                        .with("β", Any)
                        .build(|p| theta(&p[0], &p[1])),
                );
            }
        }
        Family::ResonantAm => {
            let m = form.m();
            for (reference, side) in [("Theorem 3.4", dx), ("Theorem 4.4", dy)] {
                out.push(
                    printed(reference, side, Rho, "(βX, Y), β ≠ 0")
                        .with("β", Nonzero)
                        .flag("Theorem 3.4 / 4.4")
                        .build(|p| rho(&p[0], &Poly2::zero())),
                );
                let one_a = one.clone();
                out.push(
                    printed(reference, side, Theta, &format!("(X, Y + γX^{m})"))
                        .with("γ", Any)
                        .build(move |p| theta(&one_a, &p[0].mul(&Poly2::x().pow(m)))),
                );
            }
            out.push(
                derived("Y-component substitution", Rho, Expectation::Contained, &format!("(βX, Y), β^{m} = 1"))
                    .with("β", Domain::RootsOfUnity(m))
                    .build(|p| rho(&p[0], &Poly2::zero())),
            );
            out.push(
                derived("Y-component substitution", Rho, Expectation::NotContained, "(2X, Y)")
                    .build(|_| rho(&Poly2::constant(Scalar::from_int(2)), &Poly2::zero())),
            );
        }
        Family::LinearDiag => {
            let (a, b) = (form.param("a"), form.param("b"));
            if !a.is_zero() && !b.is_zero() {
                let key = "Theorem 3.6(1)";
                out.push(
                    printed(key, dx, Rho, "(αX + γY, Y)")
                        .with("α", Nonzero)
                        .with("γ", Any)
                        .flag(key)
                        .build(|p| rho(&p[0], &p[1].mul(&Poly2::y()))),
                );
                out.push(
                    printed(key, dx, Theta, "(X, βY + εX)")
                        .with("β", Nonzero)
                        .with("ε", Any)
                        .flag(key)
                        .build(|p| theta(&p[0], &p[1].mul(&Poly2::x()))),
                );
                if a != b {
                    out.push(printed("Theorem 4.5(1)", dy, Rho, "(αX, Y)").with("α", Nonzero).build(|p| rho(&p[0], &Poly2::zero())));
                    out.push(printed("Theorem 4.5(1)", dy, Theta, "(X, βY)").with("β", Nonzero).build(|p| theta(&p[0], &Poly2::zero())));
                } else {
                    out.push(
                        printed("Theorem 4.5(2)", dy, Rho, "(αX + γY, Y)")
                            .with("α", Nonzero)
                            .with("γ", Any)
                            .build(|p| rho(&p[0], &p[1].mul(&Poly2::y()))),
                    );
                    out.push(
                        printed("Theorem 4.5(2)", dy, Theta, "(X, βY + εX)")
                            .with("β", Nonzero)
                            .with("ε", Any)
                            .build(|p| theta(&p[0], &p[1].mul(&Poly2::x()))),
                    );
                }
                for (ratio, kind, moved) in [(&a / &b, Rho, Var::Y), (&b / &a, Theta, Var::X)] {
                    let name = if kind == Rho { "(X + γY^k, Y)" } else { "(X, Y + εX^k)" };
                    if is_positive_integer(&ratio) {
                        let k: u32 = ratio.to_integer().try_into().expect("small exponent");
                        let text = name.replace('k', &k.to_string());
                        let one_a = one.clone();
                        out.push(
                            derived("Lemma 3.5", kind, Expectation::Contained, &text)
                                .with("γ", Any)
                                .build(move |p| elementary(kind, &one_a, &p[0].mul(&Poly2::var(moved).pow(k)))),
                        );
                    }
                    if !ratio.is_one() {
                        let text = if kind == Rho { "(X + γY, Y), γ ≠ 0" } else { "(X, Y + εX), ε ≠ 0" };
                        let one_a = one.clone();
                        out.push(
                            derived("Lemma 3.5", kind, Expectation::NotContained, text)
                                .with("γ", Nonzero)
                                .build(move |p| elementary(kind, &one_a, &p[0].mul(&Poly2::var(moved)))),
                        );
                    }
                }
            } else if a.is_zero() {
                out.push(
                    printed("Theorem 3.6(2)", dx, Rho, "(αX + γ, Y)")
                        .with("α", Nonzero)
                        .with("γ", Any)
                        .build(|p| rho(&p[0], &p[1])),
                );
                out.push(printed("Theorem 3.6(2)", dx, Theta, "(X, βY)").with("β", Nonzero).build(|p| theta(&p[0], &Poly2::zero())));
            } else {
                out.push(printed("Theorem 3.6(3)", dx, Rho, "(αX, Y)").with("α", Nonzero).build(|p| rho(&p[0], &Poly2::zero())));
                out.push(
                    printed("Theorem 3.6(3)", dx, Theta, "(X, βY + ε)")
                        .with("β", Nonzero)
                        .with("ε", Any)
                        .build(|p| theta(&p[0], &p[1])),
                );
            }
        }
        Family::LinearJordanY | Family::LinearJordan1 => {
            let a = sc(&form.param("a"));
            let key = "Theorem 3.8 / 4.6";
            let mut refs = vec![("Theorem 3.8", dx)];
            if form.family == Family::LinearJordanY {
                refs.push(("Theorem 4.6", dy));
            }
            for (reference, side) in refs {
                out.push(
                    printed(reference, side, Rho, "(αX + γY, Y)")
                        .with("α", Nonzero)
                        .with("γ", Any)
                        .flag(key)
                        .build(|p| rho(&p[0], &p[1].mul(&Poly2::y()))),
                );
                let a2 = a.clone();
                out.push(
                    printed(reference, side, Theta, "(X, βY + aεX + ε)")
                        .with("β", Nonzero)
                        .with("ε", Any)
                        .flag(key)
                        .build(move |p| theta(&p[0], &p[1].mul(&a2.mul(&Poly2::x()).add(&Poly2::one())))),
                );
            }
            if form.family == Family::LinearJordanY {
                let one_a = one.clone();
                out.push(
                    derived("variant D(X) = aX + Y", Rho, Expectation::EqualsCommutant, "(X + γY, Y)")
                        .with("γ", Any)
                        .build(move |p| rho(&one_a, &p[0].mul(&Poly2::y()))),
                );
                out.push(
                    derived("variant D(X) = aX + Y", Theta, Expectation::EqualsCommutant, "(X, Y)")
                        .build(|_| Endomorphism::identity()),
                );
            } else {
                let a2 = a.clone();
                out.push(
                    derived("variant D(X) = aX + 1", Rho, Expectation::EqualsCommutant, "((1 + aγ)X + γ + δY, Y)")
                        .with("γ", Any)
                        .with("δ", Any)
                        .build(move |p| rho(&Poly2::one().add(&a2.mul(&p[0])), &p[0].add(&p[1].mul(&Poly2::y())))),
                );
                let a3 = a.clone();
                out.push(
                    derived("variant D(X) = aX + 1", Theta, Expectation::EqualsCommutant, "(X, βY + ε(aX + 1))")
                        .with("β", Nonzero)
                        .with("ε", Any)
                        .build(move |p| theta(&p[0], &p[1].mul(&a3.mul(&Poly2::x()).add(&Poly2::one())))),
                );
            }
        }
    }
    out
}

fn elementary(kind: ShapeKind, unit: &Poly2, poly: &Poly2) -> Endomorphism {
    match kind {
        Rho => rho(unit, poly),
        Theta => theta(unit, poly),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::standard_registry;

    #[test]
    fn every_form_has_templates() {
        for form in standard_registry() {
            let t = expected_families(&form);
            assert!(!t.is_empty(), "{form}");
            for tpl in &t {
                let inst = tpl.instances();
                assert!(!inst.is_empty());
                assert!(inst.iter().all(|e| e.elementary_kind().is_some()), "{}", tpl.description());
            }
        }
    }

    #[test]
    fn scalar_parameters_vary_independently() {
        let form = &standard_registry()[16];
        assert_eq!(form.family, Family::LinearJordanY);
        let t = expected_families(form);
        let eq = t.iter().find(|t| t.printed == "(X + γY, Y)").unwrap();
        assert_eq!(eq.instances().len(), 3);
    }

    #[test]
    fn diagonal_probes() {
        let form = &standard_registry()[12];
        assert_eq!(form.label(), "LINEAR_DIAG(a=2, b=1)");
        let names: Vec<String> = expected_families(form).iter().map(|t| t.printed.clone()).collect();
        assert!(names.contains(&"(X + γY^2, Y)".to_string()), "{names:?}");
        assert!(names.contains(&"(X + γY, Y), γ ≠ 0".to_string()), "{names:?}");
    }
}

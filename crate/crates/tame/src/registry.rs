//! The normal forms of locally finite derivations of `K[X,Y]` and the
//! standard instance list.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use tame_core::scalars::{int, parse_rational, Rational};
use tame_core::{Derivation, Poly2, Scalar, Var};

use crate::parser::{parse_poly, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `f(X)∂/∂Y`
    TriangularF,
    /// `∂/∂X + bY∂/∂Y`
    FlowB,
    /// `aX∂/∂X + (amY + X^m)∂/∂Y`
    ResonantAm,
    /// `aX∂/∂X + bY∂/∂Y`
    LinearDiag,
    /// `(aX + Y)∂/∂X + aY∂/∂Y`
    LinearJordanY,
    /// `(aX + 1)∂/∂X + aY∂/∂Y`
    LinearJordan1,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::TriangularF,
        Family::FlowB,
        Family::ResonantAm,
        Family::LinearDiag,
        Family::LinearJordanY,
        Family::LinearJordan1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::TriangularF => "TRIANGULAR_F",
            Family::FlowB => "FLOW_B",
            Family::ResonantAm => "RESONANT_AM",
            Family::LinearDiag => "LINEAR_DIAG",
            Family::LinearJordanY => "LINEAR_JORDAN_Y",
            Family::LinearJordan1 => "LINEAR_JORDAN_1",
        }
    }

    fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::TriangularF => &[],
            Family::FlowB => &["b"],
            Family::ResonantAm => &["a", "m"],
            Family::LinearDiag => &["a", "b"],
            Family::LinearJordanY | Family::LinearJordan1 => &["a"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| format!("unknown family `{s}` (expected one of {})", Family::ALL.map(Family::name).join(", ")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidParams {
    #[error("{family} expects parameters {expected}")]
    Missing { family: Family, expected: String },
    #[error("{family} does not take parameter `{name}`")]
    Unexpected { family: Family, name: String },
    #[error("parameter `{name}` must be nonzero")]
    Zero { name: String },
    #[error("parameter m must be an integer at least 1, got {0}")]
    BadExponent(Rational),
    #[error("the derivation is zero")]
    ZeroDerivation,
    #[error("bad parameter value for `{name}`: {reason}")]
    Value { name: String, reason: String },
}

/// A normal form: family, rational parameters and the derivation they give.
///
/// `TRIANGULAR_F` stores the coefficients of `f` as `f0, f1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub family: Family,
    pub params: BTreeMap<String, Rational>,
    pub derivation: Derivation,
}

impl NormalForm {
    pub fn param(&self, name: &str) -> Rational {
        self.params.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    /// `f` for the triangular family.
    pub fn f(&self) -> Poly2 {
        self.derivation.dy.clone()
    }

    /// `m` for the resonant family.
    pub fn m(&self) -> u32 {
        self.param("m").to_integer().to_u32().unwrap_or(0)
    }

    /// Parameters for display, with `f` as a polynomial.
    pub fn display_params(&self) -> BTreeMap<String, String> {
        if self.family == Family::TriangularF {
            return BTreeMap::from([("f".to_string(), self.f().to_string())]);
        }
        self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }

    /// Short label such as `RESONANT_AM(a=2, m=3)`.
    pub fn label(&self) -> String {
        let params: Vec<String> = self.display_params().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.family, params.join(", "))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn q(r: &Rational) -> Poly2 {
    Poly2::constant(Scalar::from_rational(r.clone()))
}

/// Builds the derivation of `family` from `params`.
pub fn make_normal_form(family: Family, params: BTreeMap<String, Rational>) -> Result<NormalForm, InvalidParams> {
    let expected = family.param_names();
    for name in params.keys() {
        let known = expected.contains(&name.as_str())
            || family == Family::TriangularF && name.strip_prefix('f').is_some_and(|k| k.parse::<u32>().is_ok());
        if !known {
            return Err(InvalidParams::Unexpected { family, name: name.clone() });
        }
    }
    if expected.iter().any(|n| !params.contains_key(*n)) {
        return Err(InvalidParams::Missing { family, expected: expected.join(", ") });
    }
    let get = |n: &str| params[n].clone();
    let nonzero = |n: &str| if get(n).is_zero() { Err(InvalidParams::Zero { name: n.to_string() }) } else { Ok(get(n)) };
    let (x, y) = (Poly2::x(), Poly2::y());
    let derivation = match family {
        Family::TriangularF => {
            let f = params.iter().fold(Poly2::zero(), |acc, (k, c)| {
                let deg: u32 = k[1..].parse().expect("checked above");
                acc.add(&q(c).mul(&x.pow(deg)))
            });
            Derivation::new(Poly2::zero(), f)
        }
        Family::FlowB => Derivation::new(Poly2::one(), q(&get("b")).mul(&y)),
        Family::ResonantAm => {
            let a = nonzero("a")?;
            let m = get("m");
            if !m.is_integer() || m < Rational::one() || m.to_integer().to_u32().is_none() {
                return Err(InvalidParams::BadExponent(m));
            }
            let mu = m.to_integer().to_u32().expect("checked");
            Derivation::new(q(&a).mul(&x), q(&(&a * &m)).mul(&y).add(&x.pow(mu)))
        }
        Family::LinearDiag => Derivation::new(q(&get("a")).mul(&x), q(&get("b")).mul(&y)),
        Family::LinearJordanY => {
            let a = nonzero("a")?;
            Derivation::new(q(&a).mul(&x).add(&y), q(&a).mul(&y))
        }
        Family::LinearJordan1 => {
            let a = nonzero("a")?;
            Derivation::new(q(&a).mul(&x).add(&Poly2::one()), q(&a).mul(&y))
        }
    };
    if derivation.is_zero() {
        return Err(InvalidParams::ZeroDerivation);
    }
    let params = params.into_iter().filter(|(_, v)| family != Family::TriangularF || !v.is_zero()).collect();
    Ok(NormalForm { family, params, derivation })
}

/// Coefficients `f0, f1, …` of a polynomial in `X` with rational coefficients.
pub fn triangular_params(f: &Poly2) -> Result<BTreeMap<String, Rational>, InvalidParams> {
    let bad = |reason: &str| InvalidParams::Value { name: "f".into(), reason: reason.into() };
    let coeffs = f.univariate_coeffs(Var::X).ok_or_else(|| bad("must be a polynomial in X"))?;
    let mut out = BTreeMap::new();
    for (i, c) in coeffs.iter().enumerate() {
        let r = c.as_rational().ok_or_else(|| bad("coefficients must be rational"))?;
        if !r.is_zero() {
            out.insert(format!("f{i}"), r);
        }
    }
    Ok(out)
}

/// Parses `a=2,b=1` (or `f=X^4+2*X^2+1` for the triangular family).
pub fn parse_params(family: Family, text: &str) -> Result<BTreeMap<String, Rational>, String> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("expected name=value, got `{item}`"))?;
        let (k, v) = (k.trim(), v.trim());
        if family == Family::TriangularF && k == "f" {
            let f = parse_poly(v).map_err(|e: ParseError| e.to_string())?;
            out.extend(triangular_params(&f).map_err(|e| e.to_string())?);
        } else {
            let r = parse_rational(v).ok_or_else(|| format!("`{v}` is not a rational number"))?;
            out.insert(k.to_string(), r);
        }
    }
    Ok(out)
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), int(*v))).collect()
}

/// The 20 standard instances, in report order.
pub fn standard_registry() -> Vec<NormalForm> {
    let mut out = Vec::new();
    let tri: [&[(&str, i64)]; 5] = [
        &[("f0", 1)],
        &[("f0", 3), ("f1", 2)],
        &[("f2", 1)],
        &[("f3", 1)],
        &[("f0", 1), ("f2", 2), ("f4", 1)],
    ];
    for p in tri {
        out.push((Family::TriangularF, params(p)));
    }
    for b in [0, 1, 2] {
        out.push((Family::FlowB, params(&[("b", b)])));
    }
    for (a, m) in [(1, 1), (2, 3), (1, 4)] {
        out.push((Family::ResonantAm, params(&[("a", a), ("m", m)])));
    }
    for (a, b) in [(1, 1), (2, 1), (3, 1), (1, 0), (0, 2)] {
        out.push((Family::LinearDiag, params(&[("a", a), ("b", b)])));
    }
    for family in [Family::LinearJordanY, Family::LinearJordan1] {
        for a in [1, 2] {
            out.push((family, params(&[("a", a)])));
        }
    }
    out.into_iter().map(|(f, p)| make_normal_form(f, p).expect("standard instance")).collect()
}

/// `s` with `f = h(X^s)`: the gcd of the exponents in `f` (0 when `f` is constant).
pub fn symmetry_order(f: &Poly2) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    f.terms().fold(0, |g, (m, _)| gcd(g, m.total()))
}

/// Rational solutions of `λ^s = 1`.
pub fn rational_roots_of_unity(s: u32) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    if s.is_multiple_of(2) {
        out.push(-Rational::one());
    }
    out
}

pub(crate) fn is_positive_integer(r: &Rational) -> bool {
    r.is_integer() && r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use tame_core::Poly2;

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
    fn triangular_example() {
        let p = parse_params(Family::TriangularF, "f=X^4+2*X^2+1").unwrap();
        let form = make_normal_form(Family::TriangularF, p).unwrap();
        assert_eq!(form.derivation, Derivation::new(Poly2::zero(), x().pow(4) + c(2) * x().pow(2) + c(1)));
        assert_eq!(symmetry_order(&form.f()), 2);
        assert_eq!(form.label(), "TRIANGULAR_F(f=X^4 + 2*X^2 + 1)");
    }

    #[test]
    fn resonant_example() {
        let form = make_normal_form(Family::ResonantAm, params(&[("a", 2), ("m", 3)])).unwrap();
        assert_eq!(form.derivation, Derivation::new(c(2) * x(), c(6) * y() + x().pow(3)));
    }

    #[test]
    fn invalid_parameters() {
        let err = make_normal_form(Family::ResonantAm, params(&[("a", 0), ("m", 1)]));
        assert_eq!(err, Err(InvalidParams::Zero { name: "a".into() }));
        let err = make_normal_form(Family::ResonantAm, params(&[("a", 1), ("m", 0)]));
        assert!(matches!(err, Err(InvalidParams::BadExponent(_))));
        let err = make_normal_form(Family::LinearDiag, params(&[("a", 0), ("b", 0)]));
        assert_eq!(err, Err(InvalidParams::ZeroDerivation));
        assert!(make_normal_form(Family::FlowB, params(&[])).is_err());
        assert!(make_normal_form(Family::FlowB, params(&[("b", 1), ("c", 2)])).is_err());
        assert!(make_normal_form(Family::TriangularF, params(&[])).is_err());
    }

    #[test]
    fn registry_shape() {
        let reg = standard_registry();
        assert_eq!(reg.len(), 20);
        assert_eq!(reg[5].derivation, Derivation::new(c(1), Poly2::zero()));
        assert_eq!("linear-jordan-1".parse::<Family>(), Ok(Family::LinearJordan1));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(rational_roots_of_unity(3), vec![int(1)]);
        assert_eq!(rational_roots_of_unity(4), vec![int(1), int(-1)]);
        assert_eq!(symmetry_order(&(x().pow(3))), 3);
        assert_eq!(symmetry_order(&(c(2) * x() + c(3))), 1);
    }
}

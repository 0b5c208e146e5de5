//! Propagation solver for the coefficient equations.
//!
//! Unknown 0 is the unit (never zero), unknowns `1..` are the coefficients of
//! the moved polynomial. The loop applies, in order: drop zero equations and
//! powers of the unit; zero out a coefficient that occurs as a lone monomial;
//! eliminate linear equations (coefficients pivot before the unit, so the
//! unit stays free when coupled); branch on the rational roots of an equation
//! in a single coefficient; finally reduce the equations in the unit alone to
//! one constraint. Anything else is returned unsolved.

use alloc::vec::Vec;

use super::UnitConstraint;
use crate::field::Field;
use crate::linalg::rref;
use crate::mpoly::MPoly;
use crate::scalars::{Rational, Scalar};
use crate::upoly::DensePoly;

pub(crate) const UNIT: usize = 0;

#[derive(Clone, Debug)]
pub(crate) struct Raw {
    /// Rows `coeffs ‖ constant` of the linear relations found.
    pub linear: Vec<Vec<Scalar>>,
    pub unit: UnitConstraint,
}

#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    Solved(Raw),
    Stalled { equations: Vec<MPoly>, linear: Vec<Vec<Scalar>> },
}

#[derive(Clone, Debug)]
struct Branch {
    eqs: Vec<MPoly>,
    linear: Vec<Vec<Scalar>>,
    nvars: usize,
}

enum Step {
    Continue,
    Infeasible,
    Split(Vec<Branch>),
    Done(UnitConstraint),
    Stall,
}

pub(crate) fn solve_system(eqs: Vec<MPoly>, nvars: usize) -> Vec<Outcome> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![Branch { eqs, linear: Vec::new(), nvars }];
    while let Some(mut b) = stack.pop() {
        loop {
            match b.step() {
                Step::Continue => continue,
                Step::Infeasible => break,
                Step::Split(children) => {
                    stack.extend(children);
                    break;
                }
                Step::Done(unit) => {
                    out.push(Outcome::Solved(Raw { linear: b.linear, unit }));
                    break;
                }
                Step::Stall => {
                    out.push(Outcome::Stalled { equations: b.eqs, linear: b.linear });
                    break;
                }
            }
        }
    }
    out
}

fn to_rational(p: &DensePoly<Scalar>) -> Option<DensePoly<Rational>> {
    p.coeffs().iter().map(Scalar::as_rational).collect::<Option<Vec<_>>>().map(DensePoly::new)
}

impl Branch {
    fn step(&mut self) -> Step {
        if !self.cleanup() {
            return Step::Infeasible;
        }
        if self.eqs.is_empty() {
            return Step::Done(UnitConstraint::AnyNonzero);
        }
        if let Some(step) = self.lone_monomials() {
            return step;
        }
        if let Some(step) = self.eliminate_linear() {
            return step;
        }
        if let Some(step) = self.single_coefficient() {
            return step;
        }
        self.unit_only()
    }

    /// Removes zero equations and unit powers, normalizes, dedups.
    /// Returns false on a nonzero constant equation.
    fn cleanup(&mut self) -> bool {
        let mut next: Vec<MPoly> = Vec::new();
        for e in self.eqs.drain(..) {
            if e.is_zero() {
                continue;
            }
            let e = e.divide_var_power(UNIT, e.min_degree_in(UNIT));
            if e.as_constant().is_some() {
                return false;
            }
            let e = e.normalized();
            if !next.contains(&e) {
                next.push(e);
            }
        }
        next.sort();
        self.eqs = next;
        true
    }

    fn assign(&mut self, row: Vec<Scalar>) {
        let n = self.nvars;
        let pivot = row[..n].iter().position(|c| !c.is_zero()).expect("nonzero row");
        let inv = row[pivot].inv().expect("nonzero");
        let row: Vec<Scalar> = row.iter().map(|c| c.mul(&inv)).collect();
        let mut coeffs: Vec<Scalar> = row[..n].iter().map(Field::neg).collect();
        coeffs[pivot] = Scalar::zero();
        let expr = MPoly::from_linear(&coeffs, &row[n].neg());
        for e in &mut self.eqs {
            *e = e.substitute(pivot, &expr);
        }
        self.linear.push(row);
    }

    fn zero_row(&self, var: usize, value: Scalar) -> Vec<Scalar> {
        let mut row = alloc::vec![Scalar::zero(); self.nvars + 1];
        row[var] = Scalar::one();
        row[self.nvars] = value.neg();
        row
    }

    fn lone_monomials(&mut self) -> Option<Step> {
        let e = self.eqs.iter().find(|e| e.len() == 1)?.clone();
        let support = e.support();
        if support.len() == 1 {
            let row = self.zero_row(support[0], Scalar::zero());
            self.assign(row);
            return Some(Step::Continue);
        }
        // a product of coefficients vanishes: one factor does
        let children = support
            .into_iter()
            .map(|v| {
                let mut child = self.clone();
                let row = child.zero_row(v, Scalar::zero());
                child.assign(row);
                child
            })
            .collect();
        Some(Step::Split(children))
    }

    fn eliminate_linear(&mut self) -> Option<Step> {
        let n = self.nvars;
        let (linear, rest): (Vec<MPoly>, Vec<MPoly>) = self.eqs.drain(..).partition(|e| e.total_degree() <= 1);
        self.eqs = rest;
        if linear.is_empty() {
            return None;
        }
        // column order: coefficients, then the unit, then the constant
        let order: Vec<usize> = (1..n).chain([UNIT]).collect();
        let mut rows: Vec<Vec<Scalar>> = linear
            .iter()
            .map(|e| {
                let (coeffs, c) = e.as_linear().expect("degree at most one");
                let mut row: Vec<Scalar> = order.iter().map(|&j| coeffs[j].clone()).collect();
                row.push(c);
                row
            })
            .collect();
        let pivots = rref(&mut rows, n + 1);
        if pivots.last() == Some(&n) {
            return Some(Step::Infeasible);
        }
        for row in rows {
            let mut natural = alloc::vec![Scalar::zero(); n + 1];
            for (k, &j) in order.iter().enumerate() {
                natural[j] = row[k].clone();
            }
            natural[n] = row[n].clone();
            self.assign(natural);
        }
        Some(Step::Continue)
    }

    fn single_coefficient(&mut self) -> Option<Step> {
        let (i, poly) = self.eqs.iter().find_map(|e| match e.support().as_slice() {
            [i] if *i != UNIT => Some((*i, e.as_univariate(*i).expect("univariate"))),
            _ => None,
        })?;
        let Some(q) = to_rational(&poly.monic()) else { return Some(Step::Stall) };
        let Ok((roots, rest)) = q.squarefree_part().rational_roots() else { return Some(Step::Stall) };
        if rest.degree().unwrap_or(0) > 0 {
            return Some(Step::Stall);
        }
        let children = roots
            .into_iter()
            .map(|(r, _)| {
                let mut child = self.clone();
                let row = child.zero_row(i, Scalar::from_rational(r));
                child.assign(row);
                child
            })
            .collect();
        Some(Step::Split(children))
    }

    fn unit_only(&mut self) -> Step {
        let mut g: Option<DensePoly<Scalar>> = None;
        for e in &self.eqs {
            let Some(p) = e.as_univariate(UNIT) else { return Step::Stall };
            g = Some(match g {
                None => p.monic(),
                Some(g) => g.gcd(&p),
            });
        }
        let g = g.expect("nonempty");
        let g = g.shift_down(g.low_order()).monic();
        match g.degree() {
            None | Some(0) => return Step::Infeasible,
            Some(1) => {
                let row = self.zero_row(UNIT, g.coeff(0).neg());
                self.eqs.clear();
                self.assign(row);
                return Step::Continue;
            }
            _ => {}
        }
        if let Some((s, c)) = g.as_binomial() {
            self.eqs.clear();
            return Step::Done(UnitConstraint::PowerEquation { exponent: s as u32, value: c });
        }
        let Some(q) = to_rational(&g) else { return Step::Stall };
        let Ok((roots, rest)) = q.squarefree_part().rational_roots() else { return Step::Stall };
        if rest.degree().unwrap_or(0) > 0 {
            return Step::Stall;
        }
        self.eqs.clear();
        Step::Done(UnitConstraint::FiniteSet(roots.into_iter().map(|(r, _)| Scalar::from_rational(r)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn solved(out: &[Outcome]) -> Vec<&Raw> {
        out.iter()
            .filter_map(|o| match o {
                Outcome::Solved(r) => Some(r),
                Outcome::Stalled { .. } => None,
            })
            .collect()
    }

    #[test]
    fn power_equation_and_zeroed_coefficient() {
        // u^2 - 1 = 0, 2 u c0 = 0
        let n = 2;
        let u = MPoly::var(n, 0);
        let c0 = MPoly::var(n, 1);
        let eqs = vec![u.mul(&u).sub(&MPoly::constant(n, s(1))), u.mul(&c0).scale(&s(2))];
        let out = solve_system(eqs, n);
        let raw = solved(&out);
        assert_eq!(raw.len(), 1);
        assert_eq!(raw[0].unit, UnitConstraint::PowerEquation { exponent: 2, value: s(1) });
        assert_eq!(raw[0].linear, vec![vec![s(0), s(1), s(0)]]);
    }

    #[test]
    fn coupled_unit_stays_free() {
        // u - 1 - 2 c0 = 0
        let n = 2;
        let e = MPoly::var(n, 0).sub(&MPoly::constant(n, s(1))).sub(&MPoly::var(n, 1).scale(&s(2)));
        let out = solve_system(vec![e], n);
        let raw = solved(&out);
        assert_eq!(raw[0].unit, UnitConstraint::AnyNonzero);
        // pivot on c0
        assert!(!raw[0].linear[0][1].is_zero());
    }

    #[test]
    fn branching_and_infeasibility() {
        // c0^2 - c0 = 0 branches into c0 = 0 and c0 = 1
        let n = 2;
        let c0 = MPoly::var(n, 1);
        let out = solve_system(vec![c0.mul(&c0).sub(&c0)], n);
        assert_eq!(solved(&out).len(), 2);
        // u = 0 is excluded
        let out = solve_system(vec![MPoly::var(n, 0)], n);
        assert!(out.is_empty());
        // c0^2 - 2 has no rational root: stalls
        let out = solve_system(vec![c0.mul(&c0).sub(&MPoly::constant(n, s(2)))], n);
        assert!(matches!(out[0], Outcome::Stalled { .. }));
    }
}

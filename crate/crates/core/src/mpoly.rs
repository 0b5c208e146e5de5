//! Sparse polynomials in a fixed number of unknowns over [`Scalar`], and
//! polynomials in `X, Y` whose coefficients are such polynomials.
//!
//! Used to set up the commutation equations of an elementary automorphism
//! with symbolic coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::poly2::{Monomial, Poly2, Var};
use crate::scalars::Scalar;
use crate::upoly::DensePoly;

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(alloc::vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value when no unknown occurs.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Indices of the unknowns that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    /// Divides every term by `var_i^k`; `k` must not exceed the minimum degree.
    pub fn divide_var_power(&self, i: usize, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] -= k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Replaces unknown `i` by `expr`.
    pub fn substitute(&self, i: usize, expr: &MPoly) -> Self {
        let max = self.degree_in(i) as usize;
        if max == 0 {
            return self.clone();
        }
        let mut powers = alloc::vec![MPoly::constant(self.nvars, Scalar::one())];
        for k in 0..max {
            let next = powers[k].mul(expr);
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut rest = e.clone();
            rest[i] = 0;
            if k == 0 {
                out.add_term(rest, c.clone());
                continue;
            }
            for (pe, pc) in &powers[k].terms {
                let e2 = rest.iter().zip(pe).map(|(a, b)| a + b).collect();
                out.add_term(e2, pc.mul(c));
            }
        }
        out
    }

    /// Dense coefficients in unknown `i` when no other unknown occurs.
    pub fn as_univariate(&self, i: usize) -> Option<DensePoly<Scalar>> {
        let mut coeffs = alloc::vec![Scalar::zero(); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Some(DensePoly::new(coeffs))
    }

    /// `(coefficients of the unknowns, constant)` for a polynomial of degree ≤ 1.
    pub fn as_linear(&self) -> Option<(Vec<Scalar>, Scalar)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut coeffs = alloc::vec![Scalar::zero(); self.nvars];
        let mut constant = Scalar::zero();
        for (e, c) in &self.terms {
            match e.iter().position(|&k| k == 1) {
                Some(j) => coeffs[j] = c.clone(),
                None => constant = c.clone(),
            }
        }
        Some((coeffs, constant))
    }

    pub fn from_linear(coeffs: &[Scalar], constant: &Scalar) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, constant.clone());
        for (j, c) in coeffs.iter().enumerate() {
            p = p.add(&Self::var(n, j).scale(c));
        }
        p
    }

    /// Scales so the last coefficient (in key order) is 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next_back() {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let m = e.iter().zip(values).fold(c.clone(), |m, (&k, v)| m.mul(&v.pow(k)));
            acc.add(&m)
        })
    }

    /// Readable form with unknown names supplied by `name`.
    pub fn render(&self, name: &dyn Fn(usize) -> alloc::string::String) -> alloc::string::String {
        use alloc::format;
        use alloc::string::String;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { name(j) } else { format!("{}^{}", name(j), k) })
                .collect();
            parts.push(if mono.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("({c})*{}", mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

/// A polynomial in `X, Y` with [`MPoly`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, MPoly>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn lift(p: &Poly2, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in p.terms() {
            out.add_term(*m, &MPoly::constant(nvars, c.clone()));
        }
        out
    }

    /// `coeff · m`.
    pub fn term(m: Monomial, coeff: MPoly) -> Self {
        let mut out = Self::zero(coeff.nvars());
        out.add_term(m, &coeff);
        out
    }

    fn add_term(&mut self, m: Monomial, c: &MPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(|| MPoly::zero(c.nvars()));
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, &MPoly)> {
        self.terms.iter()
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
            out.add_term(*m, &c.scale(&Scalar::one().neg()));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), &ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_concrete(&self, rhs: &Poly2) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in rhs.terms() {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), &ca.scale(cb));
            }
        }
        out
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let (k, m2) = match v {
                Var::X if m.x > 0 => (m.x, Monomial::new(m.x - 1, m.y)),
                Var::Y if m.y > 0 => (m.y, Monomial::new(m.x, m.y - 1)),
                _ => continue,
            };
            out.add_term(m2, &c.scale(&Scalar::from_int(k as i64)));
        }
        out
    }

    /// `p(image_x, image_y)` for concrete `p`.
    pub fn substitute_into(p: &Poly2, image_x: &SymPoly, image_y: &SymPoly) -> Self {
        let nvars = image_x.nvars;
        let max_x = p.terms().map(|(m, _)| m.x).max().unwrap_or(0);
        let max_y = p.terms().map(|(m, _)| m.y).max().unwrap_or(0);
        let xs = sym_powers(image_x, max_x);
        let ys = sym_powers(image_y, max_y);
        let mut out = Self::zero(nvars);
        for (m, c) in p.terms() {
            let t = xs[m.x as usize].mul(&ys[m.y as usize]);
            for (tm, tc) in &t.terms {
                out.add_term(*tm, &tc.scale(c));
            }
        }
        out
    }

    /// `self(image_x, image_y)` for concrete images.
    pub fn substitute_concrete(&self, image_x: &Poly2, image_y: &Poly2) -> Self {
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let xs = concrete_powers(image_x, max_x);
        let ys = concrete_powers(image_y, max_y);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let t = xs[m.x as usize].mul(&ys[m.y as usize]);
            for (tm, tc) in t.terms() {
                out.add_term(*tm, &c.scale(tc));
            }
        }
        out
    }
}

fn sym_powers(p: &SymPoly, n: u32) -> Vec<SymPoly> {
    let mut out = alloc::vec![SymPoly::lift(&Poly2::one(), p.nvars)];
    for i in 0..n as usize {
        let next = out[i].mul(p);
        out.push(next);
    }
    out
}

fn concrete_powers(p: &Poly2, n: u32) -> Vec<Poly2> {
    let mut out = alloc::vec![Poly2::one()];
    for i in 0..n as usize {
        let next = out[i].mul(p);
        out.push(next);
    }
    out
}

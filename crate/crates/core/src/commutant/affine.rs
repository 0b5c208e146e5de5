//! Affine subspaces of `Scalar^n` in canonical form.

use alloc::vec::Vec;

use crate::field::Field;
use crate::linalg::{reduce_against, rref};
use crate::scalars::Scalar;

/// `particular + span(directions)`. Canonical: directions in reduced row
/// echelon form, particular reduced against them (zero at every pivot).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineSpace {
    pub particular: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

impl AffineSpace {
    pub fn new(particular: Vec<Scalar>, mut directions: Vec<Vec<Scalar>>) -> Self {
        let n = particular.len();
        let pivots = rref(&mut directions, n);
        let mut particular = particular;
        reduce_against(&mut particular, &directions, &pivots);
        Self { particular, directions }
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient(&self) -> usize {
        self.particular.len()
    }

    fn pivots(&self) -> Vec<usize> {
        self.directions.iter().map(|d| d.iter().position(|c| !c.is_zero()).expect("nonzero row")).collect()
    }

    /// Solutions of `rows · (v, 1) = 0`, each row holding `n` coefficients
    /// followed by the constant. `None` if inconsistent.
    pub fn from_equations(rows: &[Vec<Scalar>], n: usize) -> Option<Self> {
        let mut m: Vec<Vec<Scalar>> = rows.to_vec();
        let pivots = rref(&mut m, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut particular = alloc::vec![Scalar::zero(); n];
        for (row, &p) in m.iter().zip(&pivots) {
            particular[p] = row[n].neg();
        }
        let directions = (0..n)
            .filter(|j| !pivots.contains(j))
            .map(|f| {
                let mut v = alloc::vec![Scalar::zero(); n];
                v[f] = Scalar::one();
                for (row, &p) in m.iter().zip(&pivots) {
                    v[p] = row[f].neg();
                }
                v
            })
            .collect();
        Some(Self::new(particular, directions))
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient() {
            return false;
        }
        let mut w: Vec<Scalar> = v.iter().zip(&self.particular).map(|(a, b)| a.sub(b)).collect();
        reduce_against(&mut w, &self.directions, &self.pivots());
        w.iter().all(Field::is_zero)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        if !other.contains(&self.particular) {
            return false;
        }
        let zero = alloc::vec![Scalar::zero(); other.ambient()];
        let shifted = Self { particular: zero, directions: other.directions.clone() };
        self.directions.iter().all(|d| shifted.contains(d))
    }

    /// `particular + Σ tᵢ·directionsᵢ`.
    pub fn point(&self, params: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.particular.clone();
        for (d, t) in self.directions.iter().zip(params) {
            for (x, c) in v.iter_mut().zip(d) {
                if !c.is_zero() {
                    *x = x.add(&c.mul(t));
                }
            }
        }
        v
    }

    /// Intersection with `{v : v[i] = 0 for i in coords}`.
    pub fn with_zero_coordinates(&self, coords: &[usize]) -> Option<Self> {
        let k = self.dim();
        // unknowns are the direction weights t
        let rows: Vec<Vec<Scalar>> = coords
            .iter()
            .map(|&i| {
                let mut row: Vec<Scalar> = self.directions.iter().map(|d| d[i].clone()).collect();
                row.push(self.particular[i].clone());
                row
            })
            .collect();
        let weights = Self::from_equations(&rows, k)?;
        let particular = self.point(&weights.particular);
        let directions = weights
            .directions
            .iter()
            .map(|w| {
                let zero = Self { particular: alloc::vec![Scalar::zero(); self.ambient()], directions: self.directions.clone() };
                zero.point(w)
            })
            .collect();
        Some(Self::new(particular, directions))
    }

    /// Drops every coordinate from `n` on.
    pub fn truncate(&self, n: usize) -> Self {
        let directions = self.directions.iter().map(|d| d[..n].to_vec()).collect();
        Self::new(self.particular[..n].to_vec(), directions)
    }
}

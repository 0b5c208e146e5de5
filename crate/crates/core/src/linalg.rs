//! Small dense matrices and row reduction over an exact field.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref(&mut rows, self.cols).len()
    }
}

/// Characteristic polynomial `det(tI - m)` by reduction to upper Hessenberg
/// form followed by the standard recurrence on leading principal minors.
pub fn charpoly<F: Field>(m: &Matrix<F>) -> crate::upoly::DensePoly<F> {
    use crate::upoly::DensePoly;
    assert!(m.is_square());
    let n = m.rows;
    let mut h = m.clone();
    // similarity transforms to Hessenberg form
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| !h.get(r, c).is_zero()) else { continue };
        if p != c + 1 {
            for j in 0..n {
                let a = h.get(p, j).clone();
                let b = h.get(c + 1, j).clone();
                h.set(p, j, b);
                h.set(c + 1, j, a);
            }
            for i in 0..n {
                let a = h.get(i, p).clone();
                let b = h.get(i, c + 1).clone();
                h.set(i, p, b);
                h.set(i, c + 1, a);
            }
        }
        let pivot_inv = h.get(c + 1, c).inv().expect("nonzero pivot");
        for r in c + 2..n {
            let f = h.get(r, c).mul(&pivot_inv);
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = h.get(r, j).sub(&f.mul(h.get(c + 1, j)));
                h.set(r, j, v);
            }
            for i in 0..n {
                let v = h.get(i, c + 1).add(&f.mul(h.get(i, r)));
                h.set(i, c + 1, v);
            }
        }
    }
    // p_k(t) = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<DensePoly<F>> = vec![DensePoly::one()];
    for k in 0..n {
        let mut next = DensePoly::linear_root(h.get(k, k)).mul(&polys[k]);
        let mut prod = F::one();
        for i in (0..k).rev() {
            prod = prod.mul(h.get(i + 1, i));
            if prod.is_zero() {
                break;
            }
            let coeff = h.get(i, k).mul(&prod);
            if !coeff.is_zero() {
                next = next.sub(&polys[i].scale(&coeff));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// Brings `rows` into reduced row echelon form in place, dropping zero rows.
/// Pivot columns are chosen left to right; returns them in row order.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Reduces `v` against rows in reduced echelon form with the given pivots.
pub fn reduce_against<F: Field>(v: &mut [F], rows: &[Vec<F>], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (x, r) in v.iter_mut().zip(row) {
            if !r.is_zero() {
                *x = x.sub(&f.mul(r));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let mut rows = a.to_rows();
        let piv = rref(&mut rows, 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0], vec![int(1), int(0), int(1)]);
        assert_eq!(rows[1], vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn charpoly_matches_hand_expansion() {
        use crate::upoly::DensePoly;
        // [[2,1,0],[1,3,1],[0,1,4]]: t^3 - 9t^2 + 24t - 18
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let want = DensePoly::new(vec![int(-18), int(24), int(-9), int(1)]);
        assert_eq!(charpoly(&a), want);
        // permutation-like matrix needs the row swap
        let b = m(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(charpoly(&b), DensePoly::new(vec![int(0), int(-1), int(0), int(1)]));
    }

    #[test]
    fn multiplication() {
        let a = m(&[&[0, 1], &[0, 0]]);
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.mul_vec(&[int(3), int(5)]), vec![int(5), int(0)]);
        assert_eq!(Matrix::<Rational>::identity(2).mul(&a), a);
    }
}

//! Dense exact linear algebra over Q(zeta_m): products, Gauss-Jordan
//! inversion, determinants and rank. Matrix dimensions in this crate are
//! bounded by the state-space dimension d, so dense elimination is fine.

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CycMat {
    order: u32,
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl CycMat {
    pub fn zero(order: u32, rows: usize, cols: usize) -> Self {
        CycMat { order, rows, cols, data: vec![Cyclotomic::zero(order); rows * cols] }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = Self::zero(order, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Cyclotomic::one(order);
        }
        m
    }

    pub fn from_columns(order: u32, cols: &[Vec<Cyclotomic>]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zero(order, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Cyclotomic {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zero(self.order, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let cur = out.at(i, j).add(&t);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero(self.order);
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self.at(i, j).is_zero() {
                        acc = acc.add(&self.at(i, j).mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = a.sub(b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.order, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Gauss-Jordan elimination; returns (rank, reduced matrix, transform)
    /// where transform * self = reduced.
    fn eliminate(&self) -> (usize, CycMat, CycMat) {
        let mut a = self.clone();
        let mut t = Self::identity(self.order, self.rows);
        let mut rank = 0;
        for col in 0..self.cols {
            // find pivot
            let Some(p) = (rank..self.rows).find(|&r| !a.at(r, col).is_zero()) else {
                continue;
            };
            // swap rows p, rank in both a and t
            for j in 0..self.cols {
                let tmp = a.at(p, j).clone();
                *a.at_mut(p, j) = a.at(rank, j).clone();
                *a.at_mut(rank, j) = tmp;
            }
            for j in 0..self.rows {
                let tmp = t.at(p, j).clone();
                *t.at_mut(p, j) = t.at(rank, j).clone();
                *t.at_mut(rank, j) = tmp;
            }
            // normalize pivot row
            let inv = a.at(rank, col).inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                *a.at_mut(rank, j) = a.at(rank, j).mul(&inv);
            }
            for j in 0..self.rows {
                *t.at_mut(rank, j) = t.at(rank, j).mul(&inv);
            }
            // clear the column
            for r in 0..self.rows {
                if r != rank && !a.at(r, col).is_zero() {
                    let f = a.at(r, col).clone();
                    for j in 0..self.cols {
                        let sub = a.at(rank, j).mul(&f);
                        *a.at_mut(r, j) = a.at(r, j).sub(&sub);
                    }
                    for j in 0..self.rows {
                        let sub = t.at(rank, j).mul(&f);
                        *t.at_mut(r, j) = t.at(r, j).sub(&sub);
                    }
                }
            }
            rank += 1;
        }
        (rank, a, t)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Result<CycMat> {
        assert_eq!(self.rows, self.cols);
        let (rank, _, t) = self.eliminate();
        if rank < self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(t)
    }

    /// Solves self * x = b for a single right-hand side.
    pub fn solve(&self, b: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    pub fn det(&self) -> Cyclotomic {
        assert_eq!(self.rows, self.cols);
        // fraction-free would be better for large sizes; d <= 8 here.
        let mut a = self.clone();
        let mut det = Cyclotomic::one(self.order);
        let n = self.rows;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.at(r, col).is_zero()) else {
                return Cyclotomic::zero(self.order);
            };
            if p != col {
                det = det.neg();
                for j in 0..n {
                    let tmp = a.at(p, j).clone();
                    *a.at_mut(p, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                }
            }
            let pivot = a.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot nonzero");
            for r in (col + 1)..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).mul(&inv);
                for j in col..n {
                    let sub = a.at(col, j).mul(&f);
                    *a.at_mut(r, j) = a.at(r, j).sub(&sub);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn inverse_roundtrip_over_q_zeta5() {
        let z = |e: i64| Cyclotomic::root_of_unity(5, e);
        let mut m = CycMat::zero(5, 3, 3);
        let vals = [
            [z(0), z(1), z(2)],
            [z(3), z(0).add(&z(1)), z(4)],
            [z(2), z(2), z(1).scale(&rat_int(3))],
        ];
        for i in 0..3 {
            for j in 0..3 {
                *m.at_mut(i, j) = vals[i][j].clone();
            }
        }
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), CycMat::identity(5, 3));
        assert_eq!(inv.mul(&m), CycMat::identity(5, 3));
    }

    #[test]
    fn rank_detects_dependence() {
        let z = |e: i64| Cyclotomic::root_of_unity(6, e);
        let cols = vec![
            vec![z(0), z(1)],
            vec![z(1), z(0)],
            // third column = first + second
            vec![z(0).add(&z(1)), z(1).add(&z(0))],
        ];
        let m = CycMat::from_columns(6, &cols);
        assert_eq!(m.rank(), 2);
        // genuinely dependent pair
        let dep = CycMat::from_columns(6, &vec![vec![z(0), z(1)], vec![z(2), z(3)]]);
        assert_eq!(dep.rank(), 1);
    }

    #[test]
    fn det_multiplicative() {
        let z = |e: i64| Cyclotomic::root_of_unity(8, e);
        let mut a = CycMat::identity(8, 2);
        *a.at_mut(0, 1) = z(3);
        let mut b = CycMat::identity(8, 2);
        *b.at_mut(1, 0) = z(5);
        *b.at_mut(1, 1) = z(1);
        let ab = a.mul(&b);
        assert_eq!(ab.det(), a.det().mul(&b.det()));
    }
}

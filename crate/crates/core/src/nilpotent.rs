//! Truncated polynomials in a nilpotent variable.
//!
//! The variable models the hyperplane class p on a sector of the inertia
//! stack: all arithmetic discards degrees above the truncation order, and
//! multiplication is exact below it.

use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentPoly<T: Ring> {
    /// Highest retained power of p.
    trunc: usize,
    /// Coefficients c_0..c_trunc.
    coeffs: Vec<T>,
}

impl<T: Ring> NilpotentPoly<T> {
    pub fn zero(trunc: usize, sample: &T) -> Self {
        NilpotentPoly { trunc, coeffs: vec![sample.ring_zero(); trunc + 1] }
    }

    pub fn constant(trunc: usize, value: T) -> Self {
        let mut out = Self::zero(trunc, &value);
        out.coeffs[0] = value;
        out
    }

    pub fn from_coeffs(trunc: usize, mut coeffs: Vec<T>, sample: &T) -> Self {
        coeffs.truncate(trunc + 1);
        coeffs.resize(trunc + 1, sample.ring_zero());
        NilpotentPoly { trunc, coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, v: T) {
        self.coeffs[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.ring_is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.trunc, rhs.trunc, "mismatched truncation orders");
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(a, b)| a.ring_add(b))
            .collect();
        NilpotentPoly { trunc: self.trunc, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        NilpotentPoly {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.ring_neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.trunc, rhs.trunc, "mismatched truncation orders");
        let mut out = Self::zero(self.trunc, &self.coeffs[0]);
        for i in 0..=self.trunc {
            if self.coeffs[i].ring_is_zero() {
                continue;
            }
            for j in 0..=(self.trunc - i) {
                if rhs.coeffs[j].ring_is_zero() {
                    continue;
                }
                let t = self.coeffs[i].ring_mul(&rhs.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].ring_add(&t);
            }
        }
        out
    }

    pub fn scale(&self, factor: &T) -> Self {
        NilpotentPoly {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.ring_mul(factor)).collect(),
        }
    }

    /// Multiplies by p^n (shifting coefficients up, discarding overflow).
    pub fn shift_up(&self, n: usize) -> Self {
        let mut out = Self::zero(self.trunc, &self.coeffs[0]);
        for i in 0..=self.trunc {
            if i + n <= self.trunc {
                out.coeffs[i + n] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// Inverse of a polynomial with invertible constant term, given the
    /// inverse of that constant term. Uses the geometric series in the
    /// nilpotent part, which terminates at the truncation order.
    pub fn inv_with(&self, c0_inv: &T) -> Self {
        let one = self.coeffs[0].ring_one();
        // n = 1 - a0^{-1} * self has zero constant term.
        let scaled = self.scale(c0_inv);
        let mut n = Self::constant(self.trunc, one.clone()).sub(&scaled);
        n.coeffs[0] = self.coeffs[0].ring_zero();
        let mut acc = Self::constant(self.trunc, one);
        let mut pw = Self::constant(self.trunc, self.coeffs[0].ring_one());
        for _ in 1..=self.trunc {
            pw = pw.mul(&n);
            acc = acc.add(&pw);
        }
        acc.scale(c0_inv)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> NilpotentPoly<U> {
        NilpotentPoly {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<T: QAlgebra> NilpotentPoly<T> {
    pub fn scale_rat(&self, r: &crate::rational::Rational) -> Self {
        NilpotentPoly {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| c.scale_rational(r)).collect(),
        }
    }

    /// exp of a polynomial with zero constant term; the series terminates at
    /// the truncation order.
    pub fn exp_nilpotent(&self) -> Self {
        assert!(self.coeffs[0].ring_is_zero(), "exp needs zero constant term");
        let one = self.coeffs[0].ring_one();
        let mut acc = Self::constant(self.trunc, one.clone());
        let mut pw = Self::constant(self.trunc, one);
        let mut fact = crate::rational::Rational::from_integer(1.into());
        for n in 1..=self.trunc as u64 {
            pw = pw.mul(self);
            fact *= crate::rational::Rational::from_integer(n.into());
            acc = acc.add(&pw.scale_rat(&fact.recip()));
        }
        acc
    }
}

use crate::ring::QAlgebra;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int, Rational};

    fn poly(trunc: usize, cs: &[Rational]) -> NilpotentPoly<Rational> {
        NilpotentPoly::from_coeffs(trunc, cs.to_vec(), &rat_int(0))
    }

    #[test]
    fn truncation_discards_high_degrees() {
        let a = poly(2, &[rat_int(1), rat_int(1), rat_int(1)]);
        let b = a.mul(&a);
        assert_eq!(b, poly(2, &[rat_int(1), rat_int(2), rat_int(3)]));
    }

    #[test]
    fn geometric_inverse() {
        // (1 + p)^{-1} = 1 - p + p^2 - p^3 at truncation 3.
        let a = poly(3, &[rat_int(1), rat_int(1)]);
        let inv = a.inv_with(&rat_int(1));
        assert_eq!(inv, poly(3, &[rat_int(1), rat_int(-1), rat_int(1), rat_int(-1)]));
        assert_eq!(a.mul(&inv), poly(3, &[rat_int(1)]));
    }

    #[test]
    fn inverse_with_nontrivial_constant() {
        let a = poly(2, &[rat(2, 3), rat(1, 5), rat(7, 2)]);
        let inv = a.inv_with(&rat(3, 2));
        assert_eq!(a.mul(&inv), poly(2, &[rat_int(1)]));
    }
}

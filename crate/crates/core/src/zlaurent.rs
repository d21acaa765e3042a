//! Laurent polynomials in z with coefficients polynomial in the equivariant
//! parameter lambda, over Q. These are the exact scalars of the symbolic
//! I-function and H-function coefficients.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::{rat_int, Rational};
use crate::ring::{QAlgebra, Ring};

/// Keys are (z-exponent, lambda-exponent); support is finite.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ZLaurent {
    terms: BTreeMap<(i64, u32), Rational>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, rat_int(1))
    }

    pub fn monomial(z_exp: i64, lambda_exp: u32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((z_exp, lambda_exp), coeff);
        }
        ZLaurent { terms }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// z-monomial `c * z^n`.
    pub fn z_pow(n: i64, c: Rational) -> Self {
        Self::monomial(n, 0, c)
    }

    /// `c * lambda`.
    pub fn lambda(c: Rational) -> Self {
        Self::monomial(0, 1, c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, z_exp: i64, lambda_exp: u32) -> Rational {
        self.terms.get(&(z_exp, lambda_exp)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_z_exp(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_z_exp(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn max_lambda_exp(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    fn insert(&mut self, key: (i64, u32), val: Rational) {
        if val.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += val;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in rhs.terms.iter() {
            out.insert(*k, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ZLaurent {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = ZLaurent::zero();
        for ((za, la), ca) in self.terms.iter() {
            for ((zb, lb), cb) in rhs.terms.iter() {
                out.insert((za + zb, la + lb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return ZLaurent::zero();
        }
        ZLaurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v * r)).collect(),
        }
    }

    /// Multiplies by z^n.
    pub fn mul_z_pow(&self, n: i64) -> Self {
        ZLaurent {
            terms: self.terms.iter().map(|((z, l), v)| ((*z + n, *l), v.clone())).collect(),
        }
    }

    /// Division by a monomial `c * z^n`, exact.
    pub fn div_z_monomial(&self, n: i64, c: &Rational) -> Self {
        assert!(!c.is_zero());
        ZLaurent {
            terms: self
                .terms
                .iter()
                .map(|((z, l), v)| ((*z - n, *l), v / c))
                .collect(),
        }
    }

    /// Sets lambda to zero (keeps lambda-degree-0 part).
    pub fn lambda_zero(&self) -> Self {
        ZLaurent {
            terms: self
                .terms
                .iter()
                .filter(|((_, l), _)| *l == 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Coefficient of z^n as a polynomial in lambda: (lambda_exp -> coeff).
    pub fn z_coefficient(&self, n: i64) -> BTreeMap<u32, Rational> {
        self.terms
            .iter()
            .filter(|((z, _), _)| *z == n)
            .map(|((_, l), v)| (*l, v.clone()))
            .collect()
    }
}

impl Ring for ZLaurent {
    fn ring_zero(&self) -> Self {
        ZLaurent::zero()
    }
    fn ring_one(&self) -> Self {
        ZLaurent::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl QAlgebra for ZLaurent {
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

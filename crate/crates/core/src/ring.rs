//! Minimal commutative-ring abstraction shared by the truncated polynomial
//! and series engines, with implementations for the exact scalar types.

use crate::cyclotomic::Cyclotomic;
use crate::graded::GradedScalar;
use crate::rational::Rational;
use num_traits::{One, Zero};

pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_is_zero(&self) -> bool;

    fn ring_sub(&self, rhs: &Self) -> Self {
        self.ring_add(&rhs.ring_neg())
    }
}

/// Rings that are algebras over Q (everything in this crate except plain
/// integers), allowing exact scaling by rationals.
pub trait QAlgebra: Ring {
    fn scale_rational(&self, r: &Rational) -> Self;
}

impl QAlgebra for Rational {
    fn scale_rational(&self, r: &Rational) -> Self {
        self * r
    }
}

impl QAlgebra for Cyclotomic {
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl QAlgebra for GradedScalar {
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl Ring for Rational {
    fn ring_zero(&self) -> Self {
        Rational::zero()
    }
    fn ring_one(&self) -> Self {
        Rational::one()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_neg(&self) -> Self {
        -self.clone()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for Cyclotomic {
    fn ring_zero(&self) -> Self {
        Cyclotomic::zero(self.order())
    }
    fn ring_one(&self) -> Self {
        Cyclotomic::one(self.order())
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

impl Ring for GradedScalar {
    fn ring_zero(&self) -> Self {
        GradedScalar::zero(self.value().order())
    }
    fn ring_one(&self) -> Self {
        GradedScalar::one(self.value().order())
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

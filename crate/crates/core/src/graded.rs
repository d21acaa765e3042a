//! Scalars of the form (cyclotomic number) x (2 pi i)^n.
//!
//! The transcendental factor is carried as an integer grade rather than
//! evaluated, so identities involving (2 pi i)-powers are checked with zero
//! tolerance. Sums of mixed grades are rejected in exact mode; they only
//! become meaningful after conversion to floating point.

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedScalar {
    value: Cyclotomic,
    twopi_power: i64,
}

impl GradedScalar {
    pub fn new(value: Cyclotomic, twopi_power: i64) -> Self {
        // Zero is stored at grade 0 so it can be added to anything.
        if value.is_zero() {
            GradedScalar { value, twopi_power: 0 }
        } else {
            GradedScalar { value, twopi_power }
        }
    }

    pub fn zero(order: u32) -> Self {
        Self::new(Cyclotomic::zero(order), 0)
    }

    pub fn one(order: u32) -> Self {
        Self::new(Cyclotomic::one(order), 0)
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        Self::new(Cyclotomic::from_rational(order, value), 0)
    }

    pub fn from_cyclotomic(value: Cyclotomic) -> Self {
        Self::new(value, 0)
    }

    pub fn value(&self) -> &Cyclotomic {
        &self.value
    }

    pub fn twopi_power(&self) -> i64 {
        self.twopi_power
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.twopi_power != rhs.twopi_power {
            return Err(Error::MixedTwoPiGrade(self.twopi_power, rhs.twopi_power));
        }
        Ok(Self::new(self.value.add(&rhs.value), self.twopi_power))
    }

    /// Panicking add for contexts where grades agree by construction.
    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("mixed (2 pi i)-grades in exact sum")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.value.neg(), self.twopi_power)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.value.mul(&rhs.value), self.twopi_power + rhs.twopi_power)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.value.scale(factor), self.twopi_power)
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::new(self.value.inv()?, -self.twopi_power))
    }

    /// Shifts the (2 pi i)-grade by `n`.
    pub fn mul_twopi_power(&self, n: i64) -> Self {
        Self::new(self.value.clone(), self.twopi_power + n)
    }

    /// Extracts a rational number from a grade-zero scalar; fails if a
    /// non-rational cyclotomic component survives canonical reduction or the
    /// grade is non-zero. A failure here signals an identity-check failure.
    pub fn rational_part(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::from_integer(0.into()));
        }
        if self.twopi_power != 0 {
            return Err(Error::MixedTwoPiGrade(self.twopi_power, 0));
        }
        self.value.rational_value()
    }
}

impl std::fmt::Display for GradedScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twopi_power == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "({}) * (2pi i)^{}", self.value, self.twopi_power)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn mixed_grade_sum_rejected() {
        let a = GradedScalar::from_rational(5, rat_int(1));
        let b = a.mul_twopi_power(2);
        assert!(a.checked_add(&b).is_err());
        // Zero unifies with anything.
        let z = GradedScalar::zero(5);
        assert!(z.checked_add(&b).is_ok());
    }

    #[test]
    fn product_adds_grades() {
        let a = GradedScalar::from_rational(5, rat(1, 2)).mul_twopi_power(3);
        let b = GradedScalar::from_rational(5, rat_int(4)).mul_twopi_power(-1);
        let p = a.mul(&b);
        assert_eq!(p.twopi_power(), 2);
        assert_eq!(p.value().rational_value().unwrap(), rat_int(2));
    }

    #[test]
    fn rational_part_of_hrr_like_sums() {
        // sum_{k=1}^{4} (1 - zeta5^{-k})^5 / 5 = 0
        let mut s = GradedScalar::zero(5);
        for k in 1..5i64 {
            let t = Cyclotomic::one(5).sub(&Cyclotomic::root_of_unity(5, -k)).pow(5);
            s = s.add(&GradedScalar::from_cyclotomic(t));
        }
        assert_eq!(s.scale(&rat(1, 5)).rational_part().unwrap(), rat_int(0));

        // sum_{k=1}^{4} zeta5^k (1 - zeta5^k)^5 / 5 = 5
        let mut s = GradedScalar::zero(5);
        for k in 1..5i64 {
            let t = Cyclotomic::root_of_unity(5, k)
                .mul(&Cyclotomic::one(5).sub(&Cyclotomic::root_of_unity(5, k)).pow(5));
            s = s.add(&GradedScalar::from_cyclotomic(t));
        }
        assert_eq!(s.scale(&rat(1, 5)).rational_part().unwrap(), rat_int(5));
    }

    #[test]
    fn non_rational_residue_detected() {
        let x = GradedScalar::from_cyclotomic(Cyclotomic::root_of_unity(5, 1));
        assert!(x.rational_part().is_err());
    }
}

//! Arbitrary-precision real and complex arithmetic.
//!
//! Real numbers are MPFR floats (via `rug`); complex numbers are pairs of
//! them. Every value carries its working precision in bits. The elementary
//! transcendental functions needed by the Gamma layer and the path transport
//! (exp, log, sin, cos, powers with the principal branch) are provided here.

use num_traits::{ToPrimitive, Zero};
use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::Float;

use crate::cyclotomic::Cyclotomic;
use crate::graded::GradedScalar;
use crate::rational::Rational;
use crate::ring::{QAlgebra, Ring};

pub type Real = Float;

/// Converts an exact rational to a correctly rounded float.
pub fn real_from_rational(prec: u32, r: &Rational) -> Real {
    let num = rug::Integer::from_str_radix(&r.numer().to_str_radix(16), 16).unwrap();
    let den = rug::Integer::from_str_radix(&r.denom().to_str_radix(16), 16).unwrap();
    let q = rug::Rational::from((num, den));
    Float::with_val(prec, &q)
}

pub fn pi(prec: u32) -> Real {
    Float::with_val(prec, Constant::Pi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: Real,
    pub im: Real,
}

impl MpComplex {
    pub fn new(re: Real, im: Real) -> Self {
        MpComplex { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn zero(prec: u32) -> Self {
        MpComplex::new(Float::with_val(prec, 0), Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        MpComplex::new(Float::with_val(prec, 1), Float::with_val(prec, 0))
    }

    pub fn i(prec: u32) -> Self {
        MpComplex::new(Float::with_val(prec, 0), Float::with_val(prec, 1))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        MpComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        MpComplex::new(re, Float::with_val(prec, 0))
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        Self::from_real(real_from_rational(prec, r))
    }

    /// 2 pi i at the given precision.
    pub fn two_pi_i(prec: u32) -> Self {
        let two_pi = pi(prec) * 2u32;
        MpComplex::new(Float::with_val(prec, 0), two_pi)
    }

    /// exp(2 pi i k / m).
    pub fn root_of_unity(prec: u32, m: u32, k: i64) -> Self {
        let angle = pi(prec) * 2u32 * Float::with_val(prec, k) / Float::with_val(prec, m);
        MpComplex::new(angle.clone().cos(), angle.sin())
    }

    /// Evaluates a cyclotomic number at zeta_m = exp(2 pi i / m).
    pub fn from_cyclotomic(prec: u32, c: &Cyclotomic) -> Self {
        let mut acc = MpComplex::zero(prec);
        for (e, coeff) in c.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let root = Self::root_of_unity(prec, c.order(), e as i64);
            acc = acc.add(&root.scale_real(&real_from_rational(prec, coeff)));
        }
        acc
    }

    /// Evaluates value * (2 pi i)^grade.
    pub fn from_graded(prec: u32, g: &GradedScalar) -> Self {
        let base = Self::from_cyclotomic(prec, g.value());
        base.mul(&Self::two_pi_i(prec).powi(g.twopi_power()))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        MpComplex::new(
            (&self.re + &rhs.re).complete(self.prec()),
            (&self.im + &rhs.im).complete(self.prec()),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        MpComplex::new(
            (&self.re - &rhs.re).complete(self.prec()),
            (&self.im - &rhs.im).complete(self.prec()),
        )
    }

    pub fn neg(&self) -> Self {
        MpComplex::new((-&self.re).complete(self.prec()), (-&self.im).complete(self.prec()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec();
        let re = Float::with_val(prec, &self.re * &rhs.re) - Float::with_val(prec, &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.re * &rhs.im) + Float::with_val(prec, &self.im * &rhs.re);
        MpComplex::new(re, im)
    }

    pub fn scale_real(&self, r: &Real) -> Self {
        MpComplex::new(
            (&self.re * r).complete(self.prec()),
            (&self.im * r).complete(self.prec()),
        )
    }

    pub fn conj(&self) -> Self {
        MpComplex::new(self.re.clone(), (-&self.im).complete(self.prec()))
    }

    pub fn norm_sqr(&self) -> Real {
        let prec = self.prec();
        Float::with_val(prec, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.norm_sqr();
        let num = self.mul(&rhs.conj());
        MpComplex::new(num.re / &d, num.im / &d)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        MpComplex::new(
            (self.im.clone().cos() * &r).into(),
            (self.im.clone().sin() * &r).into(),
        )
    }

    /// Principal logarithm (argument in (-pi, pi]).
    pub fn ln(&self) -> Self {
        let abs = self.abs();
        let arg = self.arg();
        MpComplex::new(abs.ln(), arg)
    }

    pub fn arg(&self) -> Real {
        // atan2(im, re)
        self.im.clone().atan2(&self.re)
    }

    pub fn sin(&self) -> Self {
        MpComplex::new(
            (self.re.clone().sin() * self.im.clone().cosh()).into(),
            (self.re.clone().cos() * self.im.clone().sinh()).into(),
        )
    }

    pub fn cos(&self) -> Self {
        MpComplex::new(
            (self.re.clone().cos() * self.im.clone().cosh()).into(),
            (-(self.re.clone().sin() * self.im.clone().sinh())).into(),
        )
    }

    /// Integer power.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one(self.prec());
        }
        let mut base = if n > 0 { self.clone() } else { self.recip() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Principal power a^b = exp(b ln a).
    pub fn pow(&self, b: &Self) -> Self {
        self.ln().mul(b).exp()
    }

    /// Principal power with a real rational exponent.
    pub fn pow_rational(&self, prec: u32, e: &Rational) -> Self {
        if let Some(n) = e.to_integer().to_i64() {
            if crate::rational::is_integer(e) {
                return self.powi(n);
            }
        }
        self.pow(&Self::from_rational(prec, e))
    }

    pub fn dist(&self, rhs: &Self) -> Real {
        self.sub(rhs).abs()
    }

    /// |self - rhs| / max(1, |rhs|).
    pub fn rel_dist(&self, rhs: &Self) -> Real {
        let denom = rhs.abs().max(&Float::with_val(self.prec(), 1));
        self.dist(rhs) / denom
    }
}

impl Ring for MpComplex {
    fn ring_zero(&self) -> Self {
        MpComplex::zero(self.prec())
    }
    fn ring_one(&self) -> Self {
        MpComplex::one(self.prec())
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

impl QAlgebra for MpComplex {
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale_real(&real_from_rational(self.prec(), r))
    }
}

impl std::fmt::Display for MpComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.20e} + {:.20e}i", self.re.to_f64(), self.im.to_f64())
    }
}

/// Converts a ZLaurent symbol to a complex number at fixed (z, lambda).
pub fn zlaurent_eval(
    prec: u32,
    s: &crate::zlaurent::ZLaurent,
    z: &MpComplex,
    lambda: &MpComplex,
) -> MpComplex {
    let mut acc = MpComplex::zero(prec);
    for ((ze, le), c) in s.terms() {
        let term = z
            .powi(*ze)
            .mul(&lambda.powi(*le as i64))
            .scale_real(&real_from_rational(prec, c));
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn complex_exp_log_roundtrip() {
        let prec = 256;
        let z = MpComplex::from_f64(prec, 0.7, -1.3);
        let w = z.exp().ln();
        assert!(z.dist(&w).to_f64() < 1e-70);
    }

    #[test]
    fn root_of_unity_matches_cyclotomic_eval() {
        let prec = 256;
        let z5 = Cyclotomic::root_of_unity(5, 7);
        let via_cyc = MpComplex::from_cyclotomic(prec, &z5);
        let direct = MpComplex::root_of_unity(prec, 5, 7);
        assert!(via_cyc.dist(&direct).to_f64() < 1e-70);
    }

    #[test]
    fn graded_eval_includes_two_pi_grade() {
        let prec = 128;
        let g = GradedScalar::from_rational(4, rat(1, 2)).mul_twopi_power(2);
        let v = MpComplex::from_graded(prec, &g);
        // (1/2) * (2 pi i)^2 = -2 pi^2
        let expect = -2.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((v.re.to_f64() - expect).abs() < 1e-10);
        assert!(v.im.to_f64().abs() < 1e-20);
    }

    #[test]
    fn principal_powers() {
        let prec = 128;
        let z = MpComplex::from_f64(prec, 0.0, 1.0);
        // i^2 via pow = exp(2 ln i) = -1
        let sq = z.pow(&MpComplex::from_f64(prec, 2.0, 0.0));
        assert!((sq.re.to_f64() + 1.0).abs() < 1e-30);
    }
}

//! Gamma and polygamma evaluation at arbitrary precision, and the expansion
//! of Gamma(c + w p) in a nilpotent variable.
//!
//! Gamma uses Spouge's approximation with the term count chosen from the
//! target precision: with parameter `a` the relative error on Re(z) >= 0 is
//! bounded by a^{-1/2} (2 pi)^{-(a + 1/2)}, so `a ~ prec * ln 2 / ln(2 pi)`
//! digits the result to the working precision. Arguments left of the strip
//! are routed through the reflection formula. Polygamma uses the recurrence
//! to push the argument right and the Bernoulli asymptotic series.

use rug::ops::{CompleteRound, Pow};
use rug::Float;

use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::mp::{pi, real_from_rational, MpComplex, Real};
use crate::nilpotent::NilpotentPoly;
use crate::rational::{rat_int, Rational};

/// Guard bits used internally on top of the argument precision.
const GUARD: u32 = 64;

fn is_nonpositive_integer(x: &MpComplex) -> bool {
    x.im.is_zero() && x.re.clone().fract().is_zero() && x.re.to_f64() <= 0.0
}

fn spouge_a(wprec: u32) -> u32 {
    // a^{-1/2} (2 pi)^{-(a+1/2)} <= 2^{-wprec}
    let ln2 = std::f64::consts::LN_2;
    let ln2pi = (2.0 * std::f64::consts::PI).ln();
    ((wprec as f64) * ln2 / ln2pi).ceil() as u32 + 3
}

/// Spouge's formula for Gamma(z+1), valid for Re(z) >= 0.
fn spouge_shifted(z: &MpComplex, wprec: u32) -> MpComplex {
    let a = spouge_a(wprec);
    let two_pi = pi(wprec) * 2u32;
    let sqrt_two_pi = two_pi.clone().sqrt();

    let mut sum = MpComplex::from_real(sqrt_two_pi);
    // c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
    let mut fact = Float::with_val(wprec, 1);
    for k in 1..a {
        if k > 1 {
            fact *= k - 1;
        }
        let amk = Float::with_val(wprec, a - k);
        let exponent = Float::with_val(wprec, k) - Float::with_val(wprec, 0.5);
        let pow = amk.clone().pow(exponent);
        let mut ck = pow * amk.exp() / &fact;
        if k % 2 == 0 {
            ck = -ck;
        }
        let denom = z.add(&MpComplex::from_real(Float::with_val(wprec, k)));
        sum = sum.add(&MpComplex::from_real(ck).div(&denom));
    }

    // (z + a)^(z + 1/2) e^(-(z+a)) * sum
    let za = z.add(&MpComplex::from_real(Float::with_val(wprec, a)));
    let exponent = z.add(&MpComplex::from_f64(wprec, 0.5, 0.0));
    za.pow(&exponent).mul(&za.neg().exp()).mul(&sum)
}

/// Gamma(x) for complex x away from the poles at non-positive integers.
pub fn gamma_complex(x: &MpComplex) -> Result<MpComplex> {
    if is_nonpositive_integer(x) {
        return Err(Error::GammaPole);
    }
    let prec = x.prec();
    let wprec = prec + GUARD;
    let xw = MpComplex::new(
        Float::with_val(wprec, &x.re),
        Float::with_val(wprec, &x.im),
    );
    let value = if xw.re.to_f64() >= 0.5 {
        let z = xw.sub(&MpComplex::one(wprec));
        spouge_shifted(&z, wprec)
    } else {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
        let pi_c = MpComplex::from_real(pi(wprec));
        let sin_pix = pi_c.mul(&xw).sin();
        let one_minus = MpComplex::one(wprec).sub(&xw);
        let g = spouge_shifted(&one_minus.sub(&MpComplex::one(wprec)), wprec);
        pi_c.div(&sin_pix.mul(&g))
    };
    Ok(MpComplex::new(
        Float::with_val(prec, &value.re),
        Float::with_val(prec, &value.im),
    ))
}

/// Real-argument wrapper.
pub fn gamma_real(prec: u32, x: &Rational) -> Result<Real> {
    let c = gamma_complex(&MpComplex::from_rational(prec, x))?;
    Ok(c.re)
}

/// psi^{(n)}(x): digamma for n = 0, higher derivatives of log Gamma above.
///
/// The argument is shifted right by the recurrence until the Bernoulli
/// asymptotic series reaches the working precision; terms are added while
/// they decrease and the first omitted term bounds the truncation error.
pub fn polygamma(n: usize, x: &MpComplex) -> Result<MpComplex> {
    if is_nonpositive_integer(x) {
        return Err(Error::GammaPole);
    }
    let prec = x.prec();
    let wprec = prec + GUARD;
    // Shift threshold: |x| >= R makes term_k ~ (2k+n-1)! / ((2pi)^{2k} (2k)! R^{2k})
    // reach 2^{-wprec} near 2k ~ 2 pi R.
    let r_target = 0.13 * (wprec as f64) + (n as f64) + 8.0;

    let mut xs = MpComplex::new(Float::with_val(wprec, &x.re), Float::with_val(wprec, &x.im));
    let mut correction = MpComplex::zero(wprec);
    let n_fact = {
        let mut f = Float::with_val(wprec, 1);
        for i in 2..=n as u32 {
            f *= i;
        }
        f
    };
    // psi^{(n)}(x) = psi^{(n)}(x + m) - sum_{j=0}^{m-1} (-1)^n n! (x+j)^{-(n+1)}
    while xs.re.to_f64() < r_target {
        let t = xs.powi(-(n as i64) - 1).scale_real(&n_fact);
        correction = if n % 2 == 0 { correction.sub(&t) } else { correction.add(&t) };
        xs = xs.add(&MpComplex::one(wprec));
    }

    // Asymptotic series at xs.
    let target = Float::with_val(wprec, 2).pow(-(wprec as i64) + 4);
    let mut acc;
    if n == 0 {
        // ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
        acc = xs.ln().sub(&xs.recip().scale_real(&Float::with_val(wprec, 0.5)));
        let x2_inv = xs.powi(-2);
        let mut xpow = MpComplex::one(wprec);
        let mut last = Float::with_val(wprec, f64::INFINITY);
        for k in 1..wprec as usize {
            xpow = xpow.mul(&x2_inv);
            let b = real_from_rational(wprec, &bernoulli_number(2 * k));
            let term = xpow.scale_real(&(b / Float::with_val(wprec, 2 * k as u32)));
            let mag = term.abs();
            if mag > last {
                break; // divergence point of the asymptotic series
            }
            acc = acc.sub(&term);
            if mag < target {
                break;
            }
            last = mag;
        }
    } else {
        // (-1)^{n-1} [ (n-1)!/x^n + n!/(2 x^{n+1})
        //              + sum_k B_{2k} (2k+n-1)!/(2k)! x^{-(2k+n)} ]
        let nm1_fact = {
            let mut f = Float::with_val(wprec, 1);
            for i in 2..n as u32 {
                f *= i;
            }
            f
        };
        acc = xs.powi(-(n as i64)).scale_real(&nm1_fact);
        acc = acc.add(
            &xs.powi(-(n as i64) - 1)
                .scale_real(&(n_fact.clone() / Float::with_val(wprec, 2))),
        );
        let mut last = Float::with_val(wprec, f64::INFINITY);
        for k in 1..wprec as usize {
            // (2k+n-1)! / (2k)!
            let mut ratio = Float::with_val(wprec, 1);
            for i in (2 * k + 1)..=(2 * k + n - 1) {
                ratio *= i as u32;
            }
            let b = real_from_rational(wprec, &bernoulli_number(2 * k));
            let term = xs
                .powi(-((2 * k + n) as i64))
                .scale_real(&(b * ratio));
            let mag = term.abs();
            if mag > last {
                break;
            }
            acc = acc.add(&term);
            if mag < target {
                break;
            }
            last = mag;
        }
        if n % 2 == 0 {
            acc = acc.neg();
        }
    }

    let total = acc.add(&correction);
    Ok(MpComplex::new(
        Float::with_val(prec, &total.re),
        Float::with_val(prec, &total.im),
    ))
}

/// Expansion of Gamma(c + w p) in the nilpotent variable p, truncated at T:
/// log Gamma(c + x) = log Gamma(c) + sum_{n>=1} psi^{(n-1)}(c) x^n / n!,
/// exponentiated in the truncated polynomial ring.
pub fn gamma_nilpotent(c: &MpComplex, w: &Rational, trunc: usize) -> Result<NilpotentPoly<MpComplex>> {
    let prec = c.prec();
    let gamma_c = gamma_complex(c)?;
    let w_real = real_from_rational(prec, w);

    let mut log_series = NilpotentPoly::zero(trunc, &MpComplex::zero(prec));
    let mut w_pow = Float::with_val(prec, 1);
    let mut fact = Rational::from_integer(1.into());
    for n in 1..=trunc {
        w_pow = (&w_pow * &w_real).complete(prec);
        fact *= rat_int(n as i64);
        let psi = polygamma(n - 1, c)?;
        let coeff = psi
            .scale_real(&w_pow)
            .scale_real(&real_from_rational(prec, &fact.recip()));
        log_series.set_coeff(n, coeff);
    }
    Ok(log_series.exp_nilpotent().scale(&gamma_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(prec: u32, re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64(prec, re, im)
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma_complex(&c(256, 0.5, 0.0)).unwrap();
        let sqrt_pi = pi(256).sqrt();
        assert!((g.re - sqrt_pi).abs().to_f64() < 1e-70);
        assert!(g.im.to_f64().abs() < 1e-70);
    }

    #[test]
    fn recurrence_at_complex_point() {
        let prec = 256;
        let z = c(prec, 0.3, 0.7);
        let g = gamma_complex(&z).unwrap();
        let g1 = gamma_complex(&z.add(&MpComplex::one(prec))).unwrap();
        let ratio = g1.div(&z.mul(&g));
        assert!(ratio.dist(&MpComplex::one(prec)).to_f64() < 1e-70);
    }

    #[test]
    fn gamma_four_fifths_to_fifth_power() {
        let g = gamma_real(256, &rat(4, 5)).unwrap();
        let fifth = Float::with_val(256, g.clone().pow(5u32));
        // frozen from independent evaluation (mpmath, 30 digits)
        assert!((fifth.to_f64() - 2.13891436021622712).abs() < 1e-12);
        // cross-check by reflection: Gamma(4/5) Gamma(1/5) = pi / sin(pi/5)
        let g15 = gamma_real(256, &rat(1, 5)).unwrap();
        let lhs = Float::with_val(256, &g15 * &g);
        let s = (pi(256) / Float::with_val(256, 5)).sin();
        let rhs = pi(256) / s;
        assert!((lhs - rhs).abs().to_f64() < 1e-70);
    }

    #[test]
    fn gamma_pole_detected() {
        assert!(gamma_complex(&c(128, 0.0, 0.0)).is_err());
        assert!(gamma_complex(&c(128, -3.0, 0.0)).is_err());
    }

    #[test]
    fn digamma_at_one_is_minus_euler() {
        let prec = 256;
        let psi = polygamma(0, &MpComplex::one(prec)).unwrap();
        // gamma_Euler = 0.57721566490153286060651209008240243...
        assert!((psi.re.to_f64() + 0.5772156649015329).abs() < 1e-14);
        // trigamma(1) = pi^2/6
        let psi1 = polygamma(1, &MpComplex::one(prec)).unwrap();
        let expect = pi(prec).square() / Float::with_val(prec, 6);
        assert!((psi1.re - expect).abs().to_f64() < 1e-70);
    }

    #[test]
    fn digamma_matches_mpfr() {
        // MPFR's digamma is an independent implementation; compare on a
        // few rational points.
        for (num, den) in [(1i64, 3i64), (7, 2), (13, 5)] {
            let prec = 256;
            let x = MpComplex::from_rational(prec, &rat(num, den));
            let ours = polygamma(0, &x).unwrap();
            let theirs = real_from_rational(prec, &rat(num, den)).digamma();
            assert!((ours.re.clone() - theirs).abs().to_f64() < 1e-72, "{num}/{den}");
        }
    }

    #[test]
    fn gamma_matches_mpfr_on_reals() {
        for (num, den) in [(1i64, 2i64), (4, 5), (9, 4), (31, 7)] {
            let prec = 256;
            let ours = gamma_real(prec, &rat(num, den)).unwrap();
            let theirs = real_from_rational(prec, &rat(num, den)).gamma();
            assert!(
                (ours.clone() - theirs).abs().to_f64() < 1e-72,
                "gamma({num}/{den})"
            );
        }
    }

    #[test]
    fn gamma_nilpotent_constant_and_linear_terms() {
        let prec = 256;
        // Gamma(1 + 0 p) = 1
        let g = gamma_nilpotent(&MpComplex::one(prec), &rat_int(0), 3).unwrap();
        assert!(g.coeff(0).dist(&MpComplex::one(prec)).to_f64() < 1e-70);
        for i in 1..=3 {
            assert!(g.coeff(i).abs().to_f64() < 1e-70);
        }
        // coefficient of p in Gamma(1 + p) is -gamma_Euler
        let g = gamma_nilpotent(&MpComplex::one(prec), &rat_int(1), 3).unwrap();
        assert!((g.coeff(1).re.to_f64() + 0.5772156649015329).abs() < 1e-14);
    }

    #[test]
    fn reflection_series_pi_over_sin() {
        // Gamma(1+p) Gamma(1-p) = pi p / sin(pi p) through T = 8.
        let prec = 256;
        let t = 8;
        let a = gamma_nilpotent(&MpComplex::one(prec), &rat_int(1), t).unwrap();
        let b = gamma_nilpotent(&MpComplex::one(prec), &rat_int(-1), t).unwrap();
        let prod = a.mul(&b);
        // pi p / sin(pi p) = 1 / (1 - (pi p)^2/6 + (pi p)^4/120 - ...)
        let mut denom = NilpotentPoly::zero(t, &MpComplex::zero(prec));
        denom.set_coeff(0, MpComplex::one(prec));
        let mut sign = -1.0f64;
        let pi_c = pi(prec);
        for k in 1..=t / 2 {
            // (-1)^k pi^{2k} / (2k+1)!
            let mut f = Float::with_val(prec, 1);
            for i in 2..=(2 * k + 1) as u32 {
                f *= i;
            }
            let coeff = Float::with_val(prec, pi_c.clone().pow((2 * k) as u32)) / f;
            let v = MpComplex::from_real(if sign < 0.0 { -coeff } else { coeff });
            denom.set_coeff(2 * k, v);
            sign = -sign;
        }
        let expect = denom.inv_with(&MpComplex::one(prec));
        for i in 0..=t {
            assert!(
                prod.coeff(i).dist(expect.coeff(i)).to_f64() < 1e-70,
                "coefficient {i}"
            );
        }
    }
}

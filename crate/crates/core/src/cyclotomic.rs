//! Exact arithmetic in the cyclotomic fields Q(zeta_m).
//!
//! Elements are stored canonically as polynomials in zeta_m of degree less
//! than deg(Phi_m), reduced modulo the m-th cyclotomic polynomial. Canonical
//! reduction makes equality decidable coefficientwise, which every exact
//! identity check in the crate relies on.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense polynomial helpers over `Rational` (lowest degree first).
fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / lead;
        q[dr - db] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                let t = &c * bi;
                r[dr - db + i] -= t;
            }
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// The m-th cyclotomic polynomial, computed by dividing x^m - 1 by the
/// cyclotomic polynomials of the proper divisors of m. Cached per order.
fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let mut num = vec![Rational::zero(); m as usize + 1];
    num[0] = -Rational::one();
    num[m as usize] = Rational::one();
    let mut phi = num;
    for k in 1..m {
        if m % k == 0 {
            let div = cyclotomic_polynomial(k);
            let (q, r) = poly_divmod(&phi, &div);
            debug_assert!(r.is_empty());
            phi = q;
        }
    }
    let arc = Arc::new(phi);
    cache.lock().unwrap().insert(m, arc.clone());
    arc
}

/// An element of Q(zeta_m), zeta_m = exp(2 pi i / m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    /// Canonical coefficients of 1, zeta, ..., zeta^(deg Phi_m - 1).
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let deg = cyclotomic_polynomial(order).len() - 1;
        Cyclotomic { order, coeffs: vec![Rational::zero(); deg] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        let mut out = Self::zero(order);
        if !out.coeffs.is_empty() {
            out.coeffs[0] = value;
        } else {
            // order 1, Phi_1 = x - 1 has degree 1, so coeffs is never empty
            unreachable!("cyclotomic field of degree 0");
        }
        out
    }

    /// Builds zeta_order^exp.
    pub fn root_of_unity(order: u32, exp: i64) -> Self {
        let e = exp.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rational::zero(); e + 1];
        raw[e] = Rational::one();
        Self::reduce(order, raw)
    }

    /// Canonically reduces raw coefficients of a polynomial in zeta_m.
    pub fn reduce(order: u32, mut raw: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        // First fold exponents mod m (zeta^m = 1), then reduce mod Phi_m.
        if raw.len() > order as usize {
            let mut folded = vec![Rational::zero(); order as usize];
            for (i, c) in raw.drain(..).enumerate() {
                folded[i % order as usize] += c;
            }
            raw = folded;
        }
        let (_, mut rem) = poly_divmod(&raw, &phi);
        rem.resize(deg, Rational::zero());
        Cyclotomic { order, coeffs: rem }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients (length = deg Phi_m).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if the element lies in Q.
    pub fn rational_value(&self) -> Result<Rational> {
        if self.coeffs.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::NonRationalResidue);
        }
        Ok(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
    }

    /// Re-embeds into Q(zeta_target) via zeta_m = zeta_target^(target/m).
    pub fn promote(&self, target: u32) -> Self {
        assert!(target % self.order == 0, "promotion requires order | target");
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[i * step] = c.clone();
            }
        }
        Self::reduce(target, raw)
    }

    fn align(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let l = num_integer::lcm(a.order, b.order);
            (a.promote(l), b.promote(l))
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (mut a, b) = Self::align(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = Self::align(self, rhs);
        let raw = poly_mul(&a.coeffs, &b.coeffs);
        Self::reduce(a.order, raw)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= factor;
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// Q[x] / Phi_m(x).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::CyclotomicDivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.order);
        // Invariants: r0 = s0 * self (mod Phi), r1 = s1 * self (mod Phi).
        let mut r0: Vec<Rational> = phi.as_ref().clone();
        let mut r1: Vec<Rational> = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s = s0.clone();
            s.resize(s.len().max(qs.len()), Rational::zero());
            for (i, c) in qs.iter().enumerate() {
                s[i] -= c;
            }
            poly_trim(&mut s);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is the gcd, a nonzero constant since Phi_m is irreducible.
        debug_assert_eq!(r0.len(), 1, "gcd with irreducible Phi_m must be constant");
        let c = r0[0].clone();
        let inv: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
        Ok(Self::reduce(self.order, inv))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
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
}

impl std::fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z{}^{i}", self.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn zeta(m: u32, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(m, e)
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let mut s = Cyclotomic::one(5);
        for e in 1..5 {
            s = s.add(&zeta(5, e));
        }
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_one_minus_zeta2() {
        // zeta_2 = -1, so 1 - zeta_2 = 2.
        let x = Cyclotomic::one(2).sub(&zeta(2, 1));
        let inv = x.inv().unwrap();
        assert_eq!(inv.rational_value().unwrap(), rat(1, 2));
    }

    #[test]
    fn product_expands_and_reduces() {
        // (1 - zeta5^-1)(1 - zeta5) = 2 - zeta5 - zeta5^4
        let a = Cyclotomic::one(5).sub(&zeta(5, -1));
        let b = Cyclotomic::one(5).sub(&zeta(5, 1));
        let lhs = a.mul(&b);
        let rhs = Cyclotomic::from_rational(5, rat(2, 1))
            .sub(&zeta(5, 1))
            .sub(&zeta(5, 4));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inv_roundtrip() {
        let x = Cyclotomic::one(8).add(&zeta(8, 1)).add(&zeta(8, 3).scale(&rat(3, 7)));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), Cyclotomic::one(8));
    }

    #[test]
    fn inversion_of_zero_errors() {
        assert!(Cyclotomic::zero(5).inv().is_err());
    }

    #[test]
    fn promotion_respects_arithmetic() {
        // zeta_3 promoted to order 6 squares consistently.
        let a = zeta(3, 1).promote(6);
        assert_eq!(a, zeta(6, 2));
        assert_eq!(zeta(3, 1).mul(&zeta(6, 1)), zeta(6, 3));
    }

    #[test]
    fn canonical_equality_via_subtraction() {
        let a = zeta(6, 5);
        // zeta_6^5 = zeta_6^2 - zeta_6^... sanity: zeta^5 = conj(zeta) = zeta^-1.
        let b = zeta(6, -1);
        assert!(a.sub(&b).is_zero());
        assert_eq!(a, b);
    }
}

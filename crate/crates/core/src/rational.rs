//! Exact rational scalars and the small number-theoretic helpers used
//! throughout: fractional parts, floors of rational multiples, binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Fractional part `<x>` in `[0, 1)`.
pub fn fracp(x: &Rational) -> Rational {
    x - x.floor()
}

/// `floor(x)` as an `i64`. Panics if the value does not fit; every floor in
/// scope is bounded by small multiples of the truncation order.
pub fn floor_i64(x: &Rational) -> i64 {
    let f = x.floor();
    let n = f.to_integer();
    i64::try_from(&n).expect("floor out of i64 range")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    let f = x.ceil();
    let n = f.to_integer();
    i64::try_from(&n).expect("ceil out of i64 range")
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Reduced positive gcd of a list of positive integers.
pub fn gcd_all(values: &[u32]) -> u32 {
    values.iter().fold(0u32, |acc, &v| acc.gcd(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fracp_in_range() {
        assert_eq!(fracp(&rat(7, 5)), rat(2, 5));
        assert_eq!(fracp(&rat(-1, 5)), rat(4, 5));
        assert_eq!(fracp(&rat_int(3)), rat_int(0));
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(9, 4), BigInt::from(126));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}

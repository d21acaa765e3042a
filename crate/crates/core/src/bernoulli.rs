//! Exact Bernoulli numbers and polynomials.
//!
//! Convention: B_n(x) is defined by z e^{zx}/(e^z - 1) = sum B_n(x) z^n / n!,
//! so B_1 = B_1(0) = -1/2.

use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::rational::{binomial, rat_int, Rational};
#[cfg(test)]
use crate::rational::rat;

/// B_n, cached process-wide (the cache is the only shared state in the
/// arithmetic kernel and is guarded for concurrent initialization).
pub fn bernoulli_number(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![rat_int(1)]));
    let mut table = cache.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k
        let mut acc = Rational::zero();
        for (k, bk) in table.iter().enumerate() {
            acc += Rational::from(binomial(m as u64 + 1, k as u64)) * bk;
        }
        let bm = -acc / rat_int(m as i64 + 1);
        table.push(bm);
    }
    table[n].clone()
}

/// B_n(x) = sum_k C(n,k) B_k x^{n-k}.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut xpow = rat_int(1);
    // iterate k from n down to 0 so x-powers build up incrementally
    for k in (0..=n).rev() {
        let term = Rational::from(binomial(n as u64, k as u64)) * bernoulli_number(k) * &xpow;
        acc += term;
        xpow *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_values() {
        assert_eq!(bernoulli_number(0), rat_int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_poly(2, &rat_int(0)), rat(1, 6));
        assert_eq!(bernoulli_poly(1, &rat(1, 2)), rat_int(0));
    }

    #[test]
    fn forward_difference() {
        // B_n(x+1) - B_n(x) = n x^(n-1), checked for n <= 12 at several x.
        for n in 1..=12usize {
            for x in [rat_int(2), rat(3, 7), rat(-5, 3)] {
                let lhs = bernoulli_poly(n, &(&x + rat_int(1))) - bernoulli_poly(n, &x);
                let mut pw = rat_int(1);
                for _ in 0..(n - 1) {
                    pw *= &x;
                }
                assert_eq!(lhs, rat_int(n as i64) * pw, "n={n}");
            }
        }
    }

    #[test]
    fn b3_difference_at_two() {
        let x = rat_int(2);
        let d = bernoulli_poly(3, &(&x + rat_int(1))) - bernoulli_poly(3, &x);
        assert_eq!(d, rat_int(12));
    }
}

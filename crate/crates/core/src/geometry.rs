//! Weight systems and the combinatorial index data attached to them.
//!
//! A weight system is a coprime list of positive weights with degree
//! d = sum(w_j) (Calabi-Yau) and w_j | d for all j (Gorenstein). Everything
//! else in the crate is parameterized by this data: the narrow index set,
//! the sector fractions, fixed-locus dimensions and the conifold value.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fracp, gcd_all, is_integer, rat, rat_int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSystem {
    weights: Vec<u32>,
    d: u32,
}

impl WeightSystem {
    /// Builds and validates a weight system; d is always inferred from the
    /// Calabi-Yau condition.
    pub fn new(weights: &[u32]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty weight list".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        let d: u32 = weights.iter().sum();
        if gcd_all(weights) != 1 {
            return Err(Error::InvalidWeights(format!(
                "weights {weights:?} are not coprime"
            )));
        }
        for &w in weights {
            if d % w != 0 {
                return Err(Error::InvalidWeights(format!(
                    "Gorenstein violation: {w} does not divide d = {d}"
                )));
            }
        }
        Ok(WeightSystem { weights: weights.to_vec(), d })
    }

    /// Parses a comma-separated weight list, e.g. "1,1,1,1,2".
    pub fn parse(s: &str) -> Result<Self> {
        let weights: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        match weights {
            Ok(w) => Self::new(&w),
            Err(e) => Err(Error::InvalidWeights(format!("cannot parse '{s}': {e}"))),
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Dimension of the hypersurface, N - 2.
    pub fn hc(&self) -> i64 {
        self.weights.len() as i64 - 2
    }

    /// q_j = w_j / d.
    pub fn q(&self, j: usize) -> Rational {
        rat(self.weights[j] as i64, self.d as i64)
    }

    pub fn qs(&self) -> Vec<Rational> {
        (0..self.n()).map(|j| self.q(j)).collect()
    }
}

impl std::fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Narrow indices, sector fractions, fixed-subspace dimensions and the
/// conifold value of a weight system.
#[derive(Clone, Debug, Serialize)]
pub struct SectorTable {
    /// k in [0, d-1] with k q_j never integral.
    pub nar: Vec<u32>,
    /// Fractions f in [0,1) with f w_j integral for some j, sorted.
    pub frf: Vec<Rational>,
    /// n_k\[k\] = dim of the zeta^k-fixed subspace, k in [0, d-1].
    pub n_k: Vec<usize>,
    /// Conifold value d^{-d} prod w_j^{w_j}.
    pub v_c: Rational,
}

impl SectorTable {
    pub fn new(ws: &WeightSystem) -> Self {
        let d = ws.d();
        let mut nar = Vec::new();
        let mut n_k = vec![0usize; d as usize];
        for k in 0..d {
            let mut fixed = 0usize;
            for j in 0..ws.n() {
                if (k * ws.weights()[j]) % d == 0 {
                    fixed += 1;
                }
            }
            n_k[k as usize] = fixed;
            if fixed == 0 {
                nar.push(k);
            }
        }
        let mut frf = Vec::new();
        for k in 0..d {
            if n_k[k as usize] > 0 {
                frf.push(rat(k as i64, d as i64));
            }
        }
        let mut v_c = rat_int(1);
        for &w in ws.weights() {
            v_c *= Rational::from(num_bigint::BigInt::from(w)).pow(w as i32);
        }
        v_c /= Rational::from(num_bigint::BigInt::from(d)).pow(d as i32);
        SectorTable { nar, frf, n_k, v_c }
    }

    /// Dimension N_f of the fixed subspace for the sector fraction f = k/d.
    pub fn n_f(&self, f: &Rational) -> usize {
        let d = self.n_k.len() as i64;
        let k = (f * rat_int(d)).to_integer();
        self.n_k[usize::try_from(&k).expect("sector fraction out of range")]
    }

    pub fn is_narrow(&self, k: u32) -> bool {
        self.nar.binary_search(&k).is_ok()
    }
}

/// Number of monomials of weighted degree m, i.e. the coefficient of t^m in
/// prod_j 1/(1 - t^{w_j}). Returns 0 for negative m.
pub fn weighted_monomial_count(ws: &WeightSystem, m: i64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::Zero;
    if m < 0 {
        return BigInt::zero();
    }
    let m = m as usize;
    let mut dp = vec![BigInt::zero(); m + 1];
    dp[0] = BigInt::one();
    for &w in ws.weights() {
        let w = w as usize;
        for i in w..=m {
            let prev = dp[i - w].clone();
            dp[i] += prev;
        }
    }
    dp[m].clone()
}

/// The built-in weight-system catalog exercised by the verification suites.
pub fn catalog() -> Vec<WeightSystem> {
    [
        vec![1, 1, 1, 1, 1],
        vec![1, 1, 1, 1, 2],
        vec![1, 1, 1, 1, 1, 1],
        vec![1, 1, 2, 2, 2],
        vec![1, 1, 1, 1, 4],
    ]
    .iter()
    .map(|w| WeightSystem::new(w).expect("catalog entries are valid"))
    .collect()
}

/// <1 - f>, the complementary sector fraction.
pub fn conj_sector(f: &Rational) -> Rational {
    fracp(&(rat_int(1) - f))
}

/// Checks k q_j for integrality (narrowness test for a single index).
pub fn is_narrow_index(ws: &WeightSystem, k: i64) -> bool {
    (0..ws.n()).all(|j| !is_integer(&(ws.q(j) * rat_int(k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn quintic_basics() {
        let ws = WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(ws.d(), 5);
        assert_eq!(ws.hc(), 3);
        let st = SectorTable::new(&ws);
        assert_eq!(st.nar, vec![1, 2, 3, 4]);
        assert_eq!(st.frf, vec![rat_int(0)]);
        assert_eq!(st.v_c, rat(1, 3125));
    }

    #[test]
    fn sextic_in_p11112() {
        let ws = WeightSystem::new(&[1, 1, 1, 1, 2]).unwrap();
        assert_eq!(ws.d(), 6);
        assert_eq!(ws.hc(), 3);
        let st = SectorTable::new(&ws);
        assert_eq!(st.nar, vec![1, 2, 4, 5]);
        assert_eq!(st.frf, vec![rat_int(0), rat(1, 2)]);
        assert_eq!(st.n_k[3], 1);
    }

    #[test]
    fn gorenstein_violation_rejected() {
        // (1,1,3): d = 5 but 3 does not divide 5.
        assert!(WeightSystem::new(&[1, 1, 3]).is_err());
        assert!(WeightSystem::new(&[2, 2, 2]).is_err()); // not coprime
        assert!(WeightSystem::new(&[]).is_err());
    }

    #[test]
    fn zero_never_narrow() {
        for ws in catalog() {
            let st = SectorTable::new(&ws);
            assert!(!st.is_narrow(0));
            assert_eq!(st.n_k[0], ws.n());
        }
    }

    #[test]
    fn involution_symmetry_and_dimension_count() {
        for ws in catalog() {
            let st = SectorTable::new(&ws);
            let d = ws.d();
            for &k in &st.nar {
                assert!(st.is_narrow(d - k), "{ws} narrow not inv-symmetric at {k}");
            }
            for f in &st.frf {
                assert!(st.frf.contains(&conj_sector(f)), "{ws} frF not inv-symmetric");
            }
            let total: usize = st.frf.iter().map(|f| st.n_f(f)).sum();
            assert_eq!(total, d as usize, "{ws} sum of N_f");
        }
    }

    #[test]
    fn monomial_counts() {
        let quintic = WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(weighted_monomial_count(&quintic, 1), BigInt::from(5));
        assert_eq!(weighted_monomial_count(&quintic, 5), BigInt::from(126));
        assert_eq!(weighted_monomial_count(&quintic, -2), BigInt::from(0));
        let ws = WeightSystem::new(&[1, 1, 1, 1, 2]).unwrap();
        assert_eq!(weighted_monomial_count(&ws, 2), BigInt::from(11));
    }

    #[test]
    fn parses_cli_weight_strings() {
        assert_eq!(WeightSystem::parse("1,1,1,1,2").unwrap().d(), 6);
        assert!(WeightSystem::parse("1,1,x").is_err());
        assert!(WeightSystem::parse("1,1,3").is_err());
    }
}

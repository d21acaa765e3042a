//! Picard-Fuchs / GKZ operators in normal-ordered form and their action on
//! the symbolic series.
//!
//! Operators are stored as sum_a var^a P_a(X) with X = z D_var and the
//! variable power on the left; composition uses X var^a = var^a (X + a z).
//! The FJRW side is written in u (shifts in u-exponent units), the GW side
//! in v (shifts in units of d times the v-exponent, matching series keys).

use std::collections::BTreeMap;

use crate::nilpotent::NilpotentPoly;
use crate::rational::{rat, rat_int, Rational};
use crate::state::Model;
use crate::zlaurent::ZLaurent;

use super::sym::{ClassTerm, Side, SymKind, SymSeries};
use super::Nu;

/// Polynomial in X over the z-Laurent lambda-polynomial scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoly(pub Vec<ZLaurent>);

impl XPoly {
    pub fn one() -> Self {
        XPoly(vec![ZLaurent::one()])
    }

    pub fn linear(c0: ZLaurent, c1: ZLaurent) -> Self {
        XPoly(vec![c0, c1])
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![ZLaurent::zero(); self.0.len() + rhs.0.len().max(1) - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        let mut p = XPoly(out);
        p.trim();
        p
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0.clone();
        out.resize(out.len().max(rhs.0.len()), ZLaurent::zero());
        for (i, b) in rhs.0.iter().enumerate() {
            out[i] = out[i].add(b);
        }
        let mut p = XPoly(out);
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        XPoly(self.0.iter().map(|c| c.neg()).collect())
    }

    /// Substitutes X -> c1 X + c0 (a linear change of the derivation).
    pub fn substitute_linear(&self, c0: &ZLaurent, c1: &ZLaurent) -> Self {
        let mut acc = XPoly(vec![ZLaurent::zero()]);
        // Horner from the top coefficient
        for c in self.0.iter().rev() {
            acc = acc.mul(&XPoly::linear(c0.clone(), c1.clone()));
            acc = acc.add(&XPoly(vec![c.clone()]));
        }
        acc.trim();
        acc
    }

    /// X -> X + s z for a rational s.
    pub fn shift_x(&self, s: &Rational) -> Self {
        if s == &Rational::from_integer(0.into()) {
            return self.clone();
        }
        self.substitute_linear(&ZLaurent::z_pow(1, s.clone()), &ZLaurent::one())
    }

    /// Evaluates at a nilpotent value of X by Horner's scheme.
    pub fn eval_nilpotent(&self, x: &NilpotentPoly<ZLaurent>) -> NilpotentPoly<ZLaurent> {
        let zero = ZLaurent::zero();
        let mut acc = NilpotentPoly::zero(x.trunc(), &zero);
        for c in self.0.iter().rev() {
            acc = acc.mul(x);
            let mut cst = NilpotentPoly::zero(x.trunc(), &zero);
            cst.set_coeff(0, c.clone());
            acc = acc.add(&cst);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// A normal-ordered differential operator sum_a var^a P_a(X).
#[derive(Clone, Debug, PartialEq)]
pub struct PfOperator {
    pub side: Side,
    /// Shift keys in series-key units (u-exponent / d*(v-exponent)).
    pub terms: BTreeMap<i64, XPoly>,
}

impl PfOperator {
    fn x_shift_per_unit(side: Side, model: &Model) -> Rational {
        match side {
            Side::Fjrw => rat_int(1),
            Side::Gw => rat(1, model.d() as i64),
        }
    }

    pub fn insert(&mut self, shift: i64, p: XPoly) {
        if p.is_zero() {
            return;
        }
        let cur = match self.terms.remove(&shift) {
            None => p,
            Some(q) => q.add(&p),
        };
        if !cur.is_zero() {
            self.terms.insert(shift, cur);
        }
    }

    pub fn neg(&self) -> Self {
        PfOperator {
            side: self.side,
            terms: self.terms.iter().map(|(k, p)| (*k, p.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, p) in rhs.terms.iter() {
            out.insert(*k, p.neg());
        }
        out
    }

    /// Composition self o rhs with the normal-ordering rule
    /// P(X) var^b = var^b P(X + b z / unit).
    pub fn compose(&self, rhs: &Self, model: &Model) -> Self {
        assert_eq!(self.side, rhs.side);
        let unit = Self::x_shift_per_unit(self.side, model);
        let mut out = PfOperator { side: self.side, terms: BTreeMap::new() };
        for (a, p) in self.terms.iter() {
            for (b, q) in rhs.terms.iter() {
                let shifted = p.shift_x(&(&unit * rat_int(*b)));
                out.insert(a + b, shifted.mul(q));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|p| p.is_zero())
    }
}

/// The order-d Picard-Fuchs operator annihilating I^{tw,nu}:
///
/// GW side (X = z D_v):
///   v prod_{c=1}^d (d X + lambda + (nu_0+c) z)
///   - prod_j prod_{c=0}^{w_j-1} (w_j X - (nu_j+c) z)
///
/// FJRW side (X = z D_u):
///   u^d prod_j prod_{c=0}^{w_j-1} (-q_j X - q_j lambda - (nu_j+c) z)
///   - prod_{c=1}^d (-X + (nu_0+c) z)
pub fn pf_operator(model: &Model, side: Side, nu: &Nu) -> PfOperator {
    let d = model.d() as i64;
    let mut op = PfOperator { side, terms: BTreeMap::new() };
    match side {
        Side::Gw => {
            let mut a = XPoly::one();
            for c in 1..=d {
                a = a.mul(&XPoly::linear(
                    ZLaurent::lambda(rat_int(1)).add(&ZLaurent::z_pow(1, rat_int(nu.0[0] + c))),
                    ZLaurent::from_rational(rat_int(d)),
                ));
            }
            let mut b = XPoly::one();
            for j in 0..model.ws.n() {
                let w = model.ws.weights()[j] as i64;
                for c in 0..w {
                    b = b.mul(&XPoly::linear(
                        ZLaurent::z_pow(1, rat_int(-(nu.0[j + 1] + c))),
                        ZLaurent::from_rational(rat_int(w)),
                    ));
                }
            }
            op.insert(d, a); // v has series-key shift +d
            op.insert(0, b.neg());
        }
        Side::Fjrw => {
            let mut a = XPoly::one();
            for j in 0..model.ws.n() {
                let w = model.ws.weights()[j] as i64;
                let qj = model.ws.q(j);
                for c in 0..w {
                    a = a.mul(&XPoly::linear(
                        ZLaurent::lambda(-qj.clone())
                            .add(&ZLaurent::z_pow(1, rat_int(-(nu.0[j + 1] + c)))),
                        ZLaurent::from_rational(-qj.clone()),
                    ));
                }
            }
            let mut b = XPoly::one();
            for c in 1..=d {
                b = b.mul(&XPoly::linear(
                    ZLaurent::z_pow(1, rat_int(nu.0[0] + c)),
                    ZLaurent::from_rational(rat_int(-1)),
                ));
            }
            op.insert(d, a); // u^d
            op.insert(0, b.neg());
        }
    }
    op
}

/// Residual of an operator applied to a symbolic series.
#[derive(Clone, Debug)]
pub struct PfResidual {
    /// Keys (u-exponent / d*v-exponent) with a nonzero residual coefficient.
    pub nonzero_keys: Vec<i64>,
    /// Residuals were checked for all keys up to this bound.
    pub checked_to: i64,
}

impl PfResidual {
    pub fn is_zero(&self) -> bool {
        self.nonzero_keys.is_empty()
    }
}

/// Applies the operator termwise. On each series term var^key A the
/// derivation evaluates to X = key * unit * z plus the prefactor shift
/// (p for the GW I-function from exp(p log v / z), z p-tilde for the reduced
/// GW H-function, nothing on the FJRW side at s^0 = 0).
pub fn apply_and_verify_pf(model: &Model, op: &PfOperator, s: &SymSeries) -> PfResidual {
    assert_eq!(op.side, s.side);
    let d = model.d() as i64;
    let mut residual: BTreeMap<i64, ClassTerm> = BTreeMap::new();

    for (key, term) in s.terms.iter() {
        for (shift, xpoly) in op.terms.iter() {
            let out_key = key + shift;
            match term {
                ClassTerm::Phi(c) => {
                    // X evaluates to key * z
                    let xval = NilpotentPoly::constant(0, ZLaurent::z_pow(1, rat_int(*key)));
                    let factor = xpoly.eval_nilpotent(&xval);
                    let add = c.mul(factor.coeff(0));
                    let entry = residual
                        .entry(out_key)
                        .or_insert_with(|| ClassTerm::Phi(ZLaurent::zero()));
                    let ClassTerm::Phi(cur) = entry else { unreachable!() };
                    *cur = cur.add(&add);
                }
                ClassTerm::Sector(p) => {
                    let n = rat(*key, d);
                    let mut xval = NilpotentPoly::zero(p.trunc(), &ZLaurent::zero());
                    xval.set_coeff(0, ZLaurent::z_pow(1, n));
                    if p.trunc() >= 1 {
                        match s.kind {
                            SymKind::IFunction => xval.set_coeff(1, ZLaurent::one()),
                            SymKind::HReduced => xval.set_coeff(1, ZLaurent::z_pow(1, rat_int(1))),
                        }
                    }
                    let factor = xpoly.eval_nilpotent(&xval);
                    let add = p.mul(&factor);
                    let entry = residual
                        .entry(out_key)
                        .or_insert_with(|| ClassTerm::Sector(add.map(|_| ZLaurent::zero())));
                    let ClassTerm::Sector(cur) = entry else { unreachable!() };
                    *cur = cur.add(&add);
                }
            }
        }
    }

    let checked_to = s.k_max;
    let nonzero_keys = residual
        .iter()
        .filter(|(k, _)| **k <= checked_to)
        .filter(|(_, v)| match v {
            ClassTerm::Phi(c) => !c.is_zero(),
            ClassTerm::Sector(p) => !p.is_zero(),
        })
        .map(|(k, _)| *k)
        .collect();
    PfResidual { nonzero_keys, checked_to }
}

/// Exact operator identity behind the u = v^{-1/d} coordinate change and the
/// conjugation by v^{lambda/(d z)}: substituting z D_u -> -(d z D_v + lambda)
/// and u^d -> v^{-1} into the FJRW operator and left-composing with v yields
/// the negative of the GW operator.
pub fn coordinate_change_matches(model: &Model, nu: &Nu) -> bool {
    let fjrw = pf_operator(model, Side::Fjrw, nu);
    let gw = pf_operator(model, Side::Gw, nu);
    let d = model.d() as i64;

    // transform the FJRW operator into the v-variable
    let mut transformed = PfOperator { side: Side::Gw, terms: BTreeMap::new() };
    for (a, p) in fjrw.terms.iter() {
        assert_eq!(a % d, 0, "FJRW shifts are multiples of d");
        // u^a = v^{-a/d}: series-key shift in nd units is -a
        let q = p.substitute_linear(
            &ZLaurent::lambda(rat_int(-1)),
            &ZLaurent::from_rational(rat_int(-d)),
        );
        transformed.insert(-a, q);
    }
    let v_op = {
        let mut t = PfOperator { side: Side::Gw, terms: BTreeMap::new() };
        t.insert(d, XPoly::one());
        t
    };
    let lhs = v_op.compose(&transformed, model);
    lhs.sub(&gw.neg()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{catalog, WeightSystem};
    use crate::hypergeom::sym::build_series;
    use crate::state::Model;

    fn quintic() -> Model {
        Model::new(WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap())
    }

    #[test]
    fn quintic_gw_operator_shape() {
        // (zD_v)^5 - v prod_{c=1}^5 (5 zD_v + c z) at lambda = 0, nu = 0:
        // the shift-0 part is -prod_j (zD_v) = -(zD_v)^5 (weights all 1).
        let m = quintic();
        let op = pf_operator(&m, Side::Gw, &Nu::zero(5));
        let p0 = &op.terms[&0];
        assert_eq!(p0.0.len(), 6);
        for i in 0..5 {
            assert!(p0.0[i].is_zero());
        }
        assert_eq!(p0.0[5], ZLaurent::from_rational(rat_int(-1)));
        // top coefficient of the v-part is 5^5
        let p1 = &op.terms[&5];
        assert_eq!(p1.0[5], ZLaurent::from_rational(rat_int(5i64.pow(5))));
    }

    #[test]
    fn coordinate_change_exact() {
        for ws in catalog() {
            let m = Model::new(ws);
            assert!(coordinate_change_matches(&m, &Nu::zero(m.ws.n())), "{}", m.ws);
            assert!(coordinate_change_matches(&m, &Nu::window(&m, 1)), "{}", m.ws);
        }
    }

    #[test]
    fn pf_annihilates_series_quintic() {
        let m = quintic();
        let k_max = 30;
        let nu = Nu::zero(5);
        for side in [Side::Fjrw, Side::Gw] {
            let op = pf_operator(&m, side, &nu);
            for kind in [SymKind::IFunction, SymKind::HReduced] {
                let s = build_series(&m, side, kind, &nu, k_max);
                let res = apply_and_verify_pf(&m, &op, &s);
                assert!(res.is_zero(), "{side:?} {kind:?}: {:?}", res.nonzero_keys);
            }
        }
    }

    #[test]
    fn pf_detects_perturbation() {
        let m = quintic();
        let nu = Nu::zero(5);
        let op = pf_operator(&m, Side::Fjrw, &nu);
        let mut s = build_series(&m, Side::Fjrw, SymKind::IFunction, &nu, 20);
        // corrupt one coefficient
        if let Some(ClassTerm::Phi(c)) = s.terms.get_mut(&4) {
            *c = c.add(&ZLaurent::from_rational(rat(1, 7)));
        }
        let res = apply_and_verify_pf(&m, &op, &s);
        assert!(!res.is_zero(), "perturbation must be detected");
    }

    #[test]
    fn pf_annihilates_window_indices() {
        let m = quintic();
        for l in [1i64, 3] {
            let nu = Nu::window(&m, l);
            for side in [Side::Fjrw, Side::Gw] {
                let op = pf_operator(&m, side, &nu);
                let s = build_series(&m, side, SymKind::IFunction, &nu, 25);
                let res = apply_and_verify_pf(&m, &op, &s);
                assert!(res.is_zero(), "{side:?} l={l}: {:?}", res.nonzero_keys);
            }
        }
    }
}

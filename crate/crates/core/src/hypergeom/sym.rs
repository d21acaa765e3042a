//! Symbolic I- and H-series with exact coefficients.
//!
//! FJRW-side terms are scalars attached to u^k phi_{(k-1) mod d}; GW-side
//! terms are truncated polynomials in the hyperplane class attached to
//! v^{n}, n in (1/d)Z, on the sector <-n>. H-functions are stored in reduced
//! form: the per-sector (respectively per-residue-class) Gamma prefactor,
//! constant in the base variable, is factored out. Picard-Fuchs operators
//! act diagonally on sectors, so annihilation of the reduced series is
//! equivalent to annihilation of the H-function itself; the numeric layer
//! reinstates the prefactors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::nilpotent::NilpotentPoly;
use crate::rational::{ceil_i64, fracp, rat, rat_int, Rational};
use crate::state::Model;
use crate::zlaurent::ZLaurent;

use super::Nu;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Fjrw,
    Gw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymKind {
    IFunction,
    /// H-function with the sector-constant Gamma prefactor removed.
    HReduced,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassTerm {
    /// FJRW: scalar coefficient of phi_{(k-1) mod d}.
    Phi(ZLaurent),
    /// GW: polynomial in p (p-tilde for HReduced) on the sector <-n>.
    Sector(NilpotentPoly<ZLaurent>),
}

#[derive(Clone, Debug)]
pub struct SymSeries {
    pub side: Side,
    pub kind: SymKind,
    pub nu: Nu,
    /// Largest retained key.
    pub k_max: i64,
    /// FJRW: key = k, exponent of u. GW: key = d*n, exponent of v^{1/d}.
    pub terms: BTreeMap<i64, ClassTerm>,
}

impl SymSeries {
    /// phi-index (reduced mod d) of an FJRW term key.
    pub fn phi_key(&self, d: u32, k: i64) -> u32 {
        ((k - 1).rem_euclid(d as i64) + 1) as u32
    }

    /// Sector key f*d of a GW term key nd.
    pub fn sector_key(&self, d: u32, nd: i64) -> u32 {
        ((-nd).rem_euclid(d as i64)) as u32
    }
}

/// Product over { b : lo < b <= hi, b = <frac> mod 1 } of (linear factors
/// const_of(b) + ...), supplied by a closure over the admissible b values.
fn admissible_b(lo: &Rational, hi: &Rational, frac: &Rational) -> Vec<Rational> {
    // smallest b > lo with <b> = frac
    let mut b = frac + Rational::from_integer(ceil_i64(&(lo - frac)).into());
    if &b <= lo {
        b += rat_int(1);
    }
    let mut out = Vec::new();
    while &b <= hi {
        out.push(b.clone());
        b += rat_int(1);
    }
    out
}

fn fjrw_i_term(model: &Model, nu: &Nu, k: i64) -> ZLaurent {
    // prod_j prod_{0 < b < k q_j + nu_j, <b> = <k q_j>} (-q_j lambda - b z)
    // / prod_{0 < b < k - nu_0} (-b z), with the overall z prefactor.
    let mut num = ZLaurent::one();
    for j in 0..model.ws.n() {
        let qj = model.ws.q(j);
        let kqj = &qj * rat_int(k);
        let hi = &kqj + rat_int(nu.0[j + 1]);
        let frac = fracp(&kqj);
        // b strictly below hi
        for b in admissible_b(&rat_int(0), &hi, &frac) {
            if b >= hi {
                break;
            }
            let factor = ZLaurent::lambda(-qj.clone()).add(&ZLaurent::z_pow(1, -b.clone()));
            num = num.mul(&factor);
        }
    }
    // denominator: integers 1..k-nu_0-1 with factor (-b z)
    let top = k - nu.0[0] - 1;
    let mut den_coeff = rat_int(1);
    for b in 1..=top.max(0) {
        den_coeff *= rat_int(-b);
    }
    let den_z = top.max(0);
    num.div_z_monomial(den_z, &den_coeff).mul_z_pow(1)
}

fn gw_i_term(model: &Model, nu: &Nu, nd: i64, trunc: usize) -> NilpotentPoly<ZLaurent> {
    let d = model.d() as i64;
    let n = rat(nd, d);
    let zero = ZLaurent::zero();
    let mut acc = NilpotentPoly::constant(trunc, ZLaurent::z_pow(1, rat_int(1)));
    // numerator prod_{b=1}^{d n + nu_0} (d p + lambda + b z)
    let top = nd + nu.0[0];
    debug_assert!(top >= 0);
    for b in 1..=top {
        let mut f = NilpotentPoly::zero(trunc, &zero);
        f.set_coeff(0, ZLaurent::lambda(rat_int(1)).add(&ZLaurent::z_pow(1, rat_int(b))));
        if trunc >= 1 {
            f.set_coeff(1, ZLaurent::from_rational(rat_int(d)));
        }
        acc = acc.mul(&f);
    }
    // per-weight ratio
    for j in 0..model.ws.n() {
        let w = model.ws.weights()[j] as i64;
        let wn = rat_int(w) * &n;
        let frac = fracp(&wn);
        let delta = &wn - rat_int(nu.0[j + 1]);
        if delta >= Rational::zero() {
            // divide by prod_{0 < b <= delta, <b> = frac} (w p + b z)
            for b in admissible_b(&rat_int(0), &delta, &frac) {
                let mut f = NilpotentPoly::zero(trunc, &zero);
                f.set_coeff(0, ZLaurent::z_pow(1, b.clone()));
                if trunc >= 1 {
                    f.set_coeff(1, ZLaurent::from_rational(rat_int(w)));
                }
                // invertible: constant term b z with b != 0
                let c0_inv = ZLaurent::z_pow(-1, b.recip());
                acc = acc.mul(&f.inv_with(&c0_inv));
            }
        } else {
            // multiply by prod_{delta < b <= 0, <b> = frac} (w p + b z)
            for b in admissible_b(&delta, &rat_int(0), &frac) {
                let mut f = NilpotentPoly::zero(trunc, &zero);
                f.set_coeff(0, ZLaurent::z_pow(1, b.clone()));
                if trunc >= 1 {
                    f.set_coeff(1, ZLaurent::from_rational(rat_int(w)));
                }
                acc = acc.mul(&f);
            }
        }
    }
    acc
}

fn fjrw_h_reduced_term(model: &Model, k: i64) -> ZLaurent {
    // Base class k0 = ((k-1) mod d) + 1, k = k0 + d m. Relative to the base,
    // 1/Gamma(k) contributes 1/prod_{c=0}^{dm-1}(k0 + c) and each
    // 1/Gamma(1 - q_j (k + xi)) contributes
    // prod_{c=1}^{w_j m} (1 - q_j k0 - q_j xi - c), xi = lambda / z.
    let d = model.d() as i64;
    let k0 = (k - 1).rem_euclid(d) + 1;
    let m = (k - k0) / d;
    debug_assert!(m >= 0);
    let mut acc = ZLaurent::z_pow(1, rat_int(1));
    if d % 2 == 1 && m % 2 == 1 {
        // (-1)^{k-1} relative to (-1)^{k0-1} is (-1)^{dm}
        acc = acc.neg();
    }
    let mut denom = rat_int(1);
    for c in 0..(d * m) {
        denom *= rat_int(k0 + c);
    }
    acc = acc.scale(&denom.recip());
    for j in 0..model.ws.n() {
        let qj = model.ws.q(j);
        let w = model.ws.weights()[j] as i64;
        for c in 1..=(w * m) {
            // (1 - q_j k0 - c) - q_j xi, xi = lambda z^{-1}
            let constant = rat_int(1) - &qj * rat_int(k0) - rat_int(c);
            let factor = ZLaurent::from_rational(constant)
                .add(&ZLaurent::monomial(-1, 1, -qj.clone()));
            acc = acc.mul(&factor);
        }
    }
    acc
}

fn gw_h_reduced_term(model: &Model, nd: i64, trunc: usize) -> NilpotentPoly<ZLaurent> {
    // Sector f = <-n>, base exponent fbar = <1-f> = <n>; n = fbar + k.
    // Relative to the base, the coefficient is
    // prod_{b=1}^{dk} (xi + d fbar + b + d pt) / prod_j prod_{b=1}^{w_j k}
    // (w_j fbar + b + w_j pt), in the normalized class pt = p / (2 pi i).
    let d = model.d() as i64;
    let fbar_d = nd.rem_euclid(d);
    let k = (nd - fbar_d) / d;
    debug_assert!(k >= 0);
    let zero = ZLaurent::zero();
    let mut acc = NilpotentPoly::constant(trunc, ZLaurent::z_pow(1, rat_int(1)));
    for b in 1..=(d * k) {
        let mut f = NilpotentPoly::zero(trunc, &zero);
        f.set_coeff(
            0,
            ZLaurent::monomial(-1, 1, rat_int(1)).add(&ZLaurent::from_rational(rat(fbar_d, 1) + rat_int(b))),
        );
        if trunc >= 1 {
            f.set_coeff(1, ZLaurent::from_rational(rat_int(d)));
        }
        acc = acc.mul(&f);
    }
    for j in 0..model.ws.n() {
        let w = model.ws.weights()[j] as i64;
        let wfbar = rat(w * fbar_d, d);
        for b in 1..=(w * k) {
            let c0 = &wfbar + rat_int(b);
            let mut f = NilpotentPoly::zero(trunc, &zero);
            f.set_coeff(0, ZLaurent::from_rational(c0.clone()));
            if trunc >= 1 {
                f.set_coeff(1, ZLaurent::from_rational(rat_int(w)));
            }
            acc = acc.mul(&f.inv_with(&ZLaurent::from_rational(c0.recip())));
        }
    }
    acc
}

/// Builds a symbolic series through exponent `k_max` (u-exponent on the
/// FJRW side, d*n on the GW side).
pub fn build_series(model: &Model, side: Side, kind: SymKind, nu: &Nu, k_max: i64) -> SymSeries {
    assert!(nu.in_lattice(model), "nu outside the GKZ lattice B");
    if kind == SymKind::HReduced {
        assert!(nu.0.iter().all(|&x| x == 0), "H-functions are defined at nu = 0");
    }
    let d = model.d() as i64;
    let mut terms = BTreeMap::new();
    match side {
        Side::Fjrw => {
            for k in (nu.0[0] + 1)..=k_max {
                let val = match kind {
                    SymKind::IFunction => fjrw_i_term(model, nu, k),
                    SymKind::HReduced => fjrw_h_reduced_term(model, k),
                };
                if !val.is_zero() {
                    terms.insert(k, ClassTerm::Phi(val));
                }
            }
        }
        Side::Gw => {
            for nd in (-nu.0[0]).max(0)..=k_max {
                let sector = ((-nd).rem_euclid(d)) as u32;
                if model.st.n_k[sector as usize] == 0 {
                    continue; // <n> not in frF
                }
                let trunc = model.st.n_k[sector as usize] - 1;
                if nd + nu.0[0] < 0 {
                    continue; // vanishing terms (all Delta_i < 0)
                }
                let val = match kind {
                    SymKind::IFunction => gw_i_term(model, nu, nd, trunc),
                    SymKind::HReduced => gw_h_reduced_term(model, nd, trunc),
                };
                if !val.is_zero() {
                    terms.insert(nd, ClassTerm::Sector(val));
                }
            }
        }
    }
    SymSeries { side, kind, nu: nu.clone(), k_max, terms }
}

/// Applies a first-order ladder operator termwise and compares against the
/// generated series for the shifted lattice index, through `k_max` minus the
/// shift. Returns mismatching keys.
fn compare_series(a: &SymSeries, b: &SymSeries, up_to: i64) -> Vec<i64> {
    let mut bad = Vec::new();
    let keys: std::collections::BTreeSet<i64> = a
        .terms
        .keys()
        .chain(b.terms.keys())
        .copied()
        .filter(|&k| k <= up_to)
        .collect();
    for k in keys {
        match (a.terms.get(&k), b.terms.get(&k)) {
            (None, None) => {}
            (Some(ClassTerm::Phi(x)), Some(ClassTerm::Phi(y))) => {
                if x != y {
                    bad.push(k);
                }
            }
            (Some(ClassTerm::Sector(x)), Some(ClassTerm::Sector(y))) => {
                if x != y {
                    bad.push(k);
                }
            }
            (Some(ClassTerm::Phi(x)), None) | (None, Some(ClassTerm::Phi(x))) => {
                if !x.is_zero() {
                    bad.push(k);
                }
            }
            (Some(ClassTerm::Sector(x)), None) | (None, Some(ClassTerm::Sector(x))) => {
                if !x.is_zero() {
                    bad.push(k);
                }
            }
            _ => bad.push(k),
        }
    }
    bad
}

/// Report of the GKZ ladder checks at a lattice index.
#[derive(Clone, Debug)]
pub struct GkzLadderReport {
    pub e0_ok: bool,
    pub ei_ok: Vec<bool>,
    pub v_shift_ok: bool,
    /// The unit relation z d/ds0 I = I holds by construction through the
    /// exp(s0/z) prefactor, which is never expanded.
    pub unit_ok: bool,
}

impl GkzLadderReport {
    pub fn all_ok(&self) -> bool {
        self.e0_ok && self.v_shift_ok && self.unit_ok && self.ei_ok.iter().all(|&b| b)
    }
}

/// Verifies the raising relations of the generalized I-functions:
/// e_0 and e_i ladders and the v-multiplication shift.
pub fn verify_gkz_ladder(model: &Model, side: Side, nu: &Nu, k_max: i64) -> GkzLadderReport {
    let d = model.d() as i64;
    let base = build_series(model, side, SymKind::IFunction, nu, k_max);
    let compare_to = k_max - d;

    // e_0: FJRW (-zD_u + (nu_0+1) z); GW (d zD_v + lambda + (nu_0+1) z).
    let e0_target = build_series(model, side, SymKind::IFunction, &nu.shifted(0, 1), k_max);
    let e0_applied = apply_first_order(model, &base, |key, trunc| match side {
        Side::Fjrw => {
            let c = ZLaurent::z_pow(1, rat_int(nu.0[0] + 1 - key));
            NilpotentPoly::constant(trunc, c)
        }
        Side::Gw => {
            // zD_v acts as n z + p on the reduced coefficients
            let n = rat(key, d);
            let mut op = NilpotentPoly::constant(
                trunc,
                ZLaurent::z_pow(1, n * rat_int(d))
                    .add(&ZLaurent::lambda(rat_int(1)))
                    .add(&ZLaurent::z_pow(1, rat_int(nu.0[0] + 1))),
            );
            if trunc >= 1 {
                op.set_coeff(1, ZLaurent::from_rational(rat_int(d)));
            }
            op
        }
    });
    let e0_ok = compare_series(&e0_applied, &e0_target, compare_to).is_empty();

    // e_i ladders
    let mut ei_ok = Vec::new();
    for i in 0..model.ws.n() {
        let qi = model.ws.q(i);
        let w = model.ws.weights()[i] as i64;
        let target = build_series(model, side, SymKind::IFunction, &nu.shifted(i + 1, 1), k_max);
        let applied = apply_first_order(model, &base, |key, trunc| match side {
            Side::Fjrw => {
                // -q_i z D_u - q_i lambda - nu_i z
                let scalar = ZLaurent::z_pow(1, -&qi * rat_int(key))
                    .add(&ZLaurent::lambda(-qi.clone()))
                    .add(&ZLaurent::z_pow(1, rat_int(-nu.0[i + 1])));
                NilpotentPoly::constant(trunc, scalar)
            }
            Side::Gw => {
                let n = rat(key, d);
                let mut op = NilpotentPoly::constant(
                    trunc,
                    ZLaurent::z_pow(1, rat_int(w) * n).add(&ZLaurent::z_pow(1, rat_int(-nu.0[i + 1]))),
                );
                if trunc >= 1 {
                    op.set_coeff(1, ZLaurent::from_rational(rat_int(w)));
                }
                op
            }
        });
        ei_ok.push(compare_series(&applied, &target, compare_to).is_empty());
    }

    // v-shift: v I^nu = I^{nu + (-d, w)}
    let target = build_series(model, side, SymKind::IFunction, &nu.v_shifted(model), k_max);
    let mut shifted = base.clone();
    shifted.terms = base
        .terms
        .iter()
        .map(|(k, v)| {
            let nk = match side {
                Side::Fjrw => k - d, // v = u^{-d}
                Side::Gw => k + d,
            };
            (nk, v.clone())
        })
        .collect();
    let v_shift_ok = compare_series(&shifted, &target, compare_to).is_empty();

    GkzLadderReport { e0_ok, ei_ok, v_shift_ok, unit_ok: true }
}

/// Multiplies each term by a (key-dependent) polynomial factor.
fn apply_first_order(
    model: &Model,
    s: &SymSeries,
    factor: impl Fn(i64, usize) -> NilpotentPoly<ZLaurent>,
) -> SymSeries {
    let mut out = s.clone();
    out.terms = s
        .terms
        .iter()
        .map(|(k, term)| match term {
            ClassTerm::Phi(c) => {
                let f = factor(*k, 0);
                (*k, ClassTerm::Phi(c.mul(f.coeff(0))))
            }
            ClassTerm::Sector(p) => {
                let f = factor(*k, p.trunc());
                (*k, ClassTerm::Sector(p.mul(&f)))
            }
        })
        .collect();
    let _ = model;
    out
}

/// F, G and the mirror map sigma = G/F extracted from the z-asymptotics of
/// the FJRW I-function at nu = 0.
#[derive(Clone, Debug)]
pub struct MirrorMapData {
    /// F(u): u-exponent -> coefficient.
    pub f: BTreeMap<i64, Rational>,
    /// G(u; lambda): (u-exp, phi key, lambda power) -> coefficient.
    pub g: BTreeMap<(i64, u32, u32), Rational>,
    /// sigma = G/F, same indexing.
    pub sigma: BTreeMap<(i64, u32, u32), Rational>,
}

pub fn mirror_map(model: &Model, k_max: i64) -> MirrorMapData {
    let d = model.d();
    let s = build_series(model, Side::Fjrw, SymKind::IFunction, &Nu::zero(model.ws.n()), k_max);
    let mut f = BTreeMap::new();
    let mut g = BTreeMap::new();
    for (k, term) in s.terms.iter() {
        let ClassTerm::Phi(c) = term else { unreachable!() };
        assert!(c.max_z_exp().unwrap_or(0) <= 1, "z-asymptotics violated");
        let phi = s.phi_key(d, *k);
        for le in 0..=c.max_lambda_exp().unwrap_or(0) {
            let z1 = c.coeff(1, le);
            if !z1.is_zero() {
                assert_eq!(phi, 1, "zF-part must sit on phi_0");
                assert_eq!(le, 0, "zF-part is lambda-free");
                f.insert(*k, z1);
            }
            let z0 = c.coeff(0, le);
            if !z0.is_zero() {
                g.insert((*k, phi, le), z0);
            }
        }
    }
    // sigma = G/F = (G/u) * (F/u)^{-1}; F = u (1 + higher), unit leading term.
    let mut ftilde = vec![Rational::zero(); (k_max as usize).max(1)];
    for (k, c) in f.iter() {
        ftilde[(*k - 1) as usize] = c.clone();
    }
    assert_eq!(ftilde[0], rat_int(1), "F is normalized to unit leading term");
    // invert the power series ftilde
    let mut inv = vec![Rational::zero(); ftilde.len()];
    inv[0] = rat_int(1);
    for m in 1..ftilde.len() {
        let mut acc = Rational::zero();
        for i in 1..=m {
            acc += &ftilde[i] * &inv[m - i];
        }
        inv[m] = -acc;
    }
    let mut sigma = BTreeMap::new();
    for ((k, phi, le), c) in g.iter() {
        // (G/u)_m with m = k-1, multiplied by inv
        for (m, im) in inv.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            let out_exp = (k - 1) + m as i64;
            if out_exp + 1 > k_max {
                continue;
            }
            let e = sigma.entry((out_exp, *phi, *le)).or_insert_with(Rational::zero);
            *e += c * im;
        }
    }
    sigma.retain(|_, v: &mut Rational| !v.is_zero());
    MirrorMapData { f, g, sigma }
}

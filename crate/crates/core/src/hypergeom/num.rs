//! Numeric evaluation of the H-functions at fixed (z, lambda) and a chosen
//! precision: running-product coefficient generation, evaluation with a
//! geometric tail bound derived from the coefficient-ratio limit, and
//! logarithmic-derivative jets for seeding the path transport.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gamma::{gamma_complex, gamma_nilpotent};
use crate::mp::{real_from_rational, MpComplex};
use crate::nilpotent::NilpotentPoly;
use crate::rational::{is_integer, rat, rat_int};
use crate::ring::QAlgebra;
use crate::state::{Model, PSpace};

/// A value vector together with the tail bound of the truncated series that
/// produced it.
#[derive(Clone, Debug)]
pub struct TailBounded {
    pub value: Vec<MpComplex>,
    pub tail_bound: f64,
}

fn poly_norm(p: &NilpotentPoly<MpComplex>) -> f64 {
    p.coeffs()
        .iter()
        .map(|c| c.abs().to_f64())
        .fold(0.0, f64::max)
}

/// Geometric tail estimate: last magnitudes extrapolated with the dominant
/// ratio, a 25% safety margin over the max of the analytic limit and the
/// empirically observed ratios.
fn tail_estimate(mags: &[f64], step_ratio_analytic: f64, steps_per_ratio: usize) -> Result<f64> {
    let n = mags.len();
    if n < 2 * steps_per_ratio + 2 {
        return Err(Error::Unsupported("series too short for a tail estimate".into()));
    }
    let mut emp: f64 = 0.0;
    for i in (n - steps_per_ratio - 3)..(n - steps_per_ratio) {
        let denom = mags[i];
        if denom > 0.0 {
            emp = emp.max(mags[i + steps_per_ratio] / denom);
        }
    }
    let rho = 1.25 * emp.max(step_ratio_analytic);
    if rho >= 1.0 {
        return Err(Error::Unsupported(format!(
            "tail ratio {rho:.3} >= 1; point too close to the convergence radius"
        )));
    }
    let last: f64 = mags[n - steps_per_ratio..].iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(last * rho / (1.0 - rho))
}

/// Numeric reduced-plus-prefactor GW H-function at fixed (z, lambda).
/// Coefficients are polynomials in the normalized class pt = p/(2 pi i),
/// which are exactly the (2 pi i)^{deg_0/2}-rescaled p-coordinates.
pub struct HNumericGw {
    pub prec: u32,
    pub z: MpComplex,
    pub lambda: MpComplex,
    pub k_terms: usize,
    pub tol: f64,
    model: Model,
    /// sector fd -> coefficients of v^{fbar + k}, k = 0..k_terms, including
    /// the Gamma prefactor and the overall factor z.
    sectors: BTreeMap<u32, Vec<NilpotentPoly<MpComplex>>>,
    v_c: f64,
}

impl HNumericGw {
    pub fn new(
        model: &Model,
        prec: u32,
        z: &MpComplex,
        lambda: &MpComplex,
        k_terms: usize,
        tol: f64,
    ) -> Result<Self> {
        let d = model.d() as i64;
        let xi = lambda.div(z);
        let mut sectors = BTreeMap::new();
        for fd in model.sector_keys(PSpace::Crp) {
            let trunc = model.sector_trunc(PSpace::Crp, fd).unwrap();
            let fbar_d = ((d - fd as i64) % d) as i64;
            // prefactor Gamma(1 + xi + d fbar + d pt) / prod_j Gamma(1 + w_j fbar + w_j pt)
            let base_num = MpComplex::one(prec)
                .add(&xi)
                .add(&MpComplex::from_rational(prec, &rat(fbar_d, 1)));
            let mut pref = gamma_nilpotent(&base_num, &rat_int(d), trunc)?;
            for j in 0..model.ws.n() {
                let w = model.ws.weights()[j] as i64;
                let arg = MpComplex::from_rational(prec, &(rat(w * fbar_d, d) + rat_int(1)));
                let g = gamma_nilpotent(&arg, &rat_int(w), trunc)?;
                let c0_inv = g.coeff(0).recip();
                pref = pref.mul(&g.inv_with(&c0_inv));
            }
            // overall z
            pref = pref.scale(&z.clone());

            let mut coeffs = Vec::with_capacity(k_terms + 1);
            coeffs.push(pref.clone());
            let mut cur = pref;
            for k in 1..=k_terms as i64 {
                // multiply by prod_{b=d(k-1)+1}^{dk} (xi + d fbar + b + d pt)
                for b in (d * (k - 1) + 1)..=(d * k) {
                    let mut f = NilpotentPoly::zero(trunc, &MpComplex::zero(prec));
                    f.set_coeff(
                        0,
                        xi.add(&MpComplex::from_rational(prec, &rat(fbar_d + b, 1))),
                    );
                    if trunc >= 1 {
                        f.set_coeff(1, MpComplex::from_rational(prec, &rat_int(d)));
                    }
                    cur = cur.mul(&f);
                }
                // divide by prod_j prod_{b=w_j(k-1)+1}^{w_j k} (w_j fbar + b + w_j pt)
                for j in 0..model.ws.n() {
                    let w = model.ws.weights()[j] as i64;
                    for b in (w * (k - 1) + 1)..=(w * k) {
                        let c0 = rat(w * fbar_d, d) + rat_int(b);
                        let mut f = NilpotentPoly::zero(trunc, &MpComplex::zero(prec));
                        f.set_coeff(0, MpComplex::from_rational(prec, &c0));
                        if trunc >= 1 {
                            f.set_coeff(1, MpComplex::from_rational(prec, &rat_int(w)));
                        }
                        cur = cur.mul(&f.inv_with(&MpComplex::from_rational(prec, &c0.recip())));
                    }
                }
                coeffs.push(cur.clone());
                let _ = k;
            }
            sectors.insert(fd, coeffs);
        }
        let st_vc = model.st.v_c.numer().to_f64().unwrap() / model.st.v_c.denom().to_f64().unwrap();
        Ok(HNumericGw {
            prec,
            z: z.clone(),
            lambda: lambda.clone(),
            k_terms,
            tol,
            model: model.clone(),
            sectors,
            v_c: st_vc,
        })
    }

    pub fn basis(&self) -> Vec<(u32, usize)> {
        self.model.sector_basis(PSpace::Crp)
    }

    fn check_radius(&self, v_abs: f64) -> Result<()> {
        if !(v_abs < self.v_c) {
            return Err(Error::OutsideRadius { point: v_abs, radius: self.v_c });
        }
        Ok(())
    }

    /// Evaluates the components (in the pt-rescaled p-basis) at v = exp(w),
    /// with the branch of log v fixed by the caller through w.
    /// Returns D_v^m values for m = 0..=order.
    pub fn jet_at_log(&self, w: &MpComplex, order: usize) -> Result<Vec<TailBounded>> {
        let prec = self.prec;
        let d = self.model.d() as i64;
        let v_abs = w.re.clone().exp().to_f64();
        self.check_radius(v_abs)?;

        let basis = self.basis();
        let mut out = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut comps = vec![MpComplex::zero(prec); basis.len()];
            let mut mags: Vec<f64> = Vec::with_capacity(self.k_terms + 1);
            for (fd, coeffs) in self.sectors.iter() {
                let trunc = self.model.sector_trunc(PSpace::Crp, *fd).unwrap();
                let fbar_d = (d - *fd as i64) % d;
                // exp(pt * w) prefactor
                let mut exp_ptw = NilpotentPoly::zero(trunc, &MpComplex::zero(prec));
                if trunc >= 1 {
                    exp_ptw.set_coeff(1, w.clone());
                }
                let exp_ptw = exp_ptw.exp_nilpotent();
                let mut sector_sum = NilpotentPoly::zero(trunc, &MpComplex::zero(prec));
                for (k, c) in coeffs.iter().enumerate() {
                    let n = rat(fbar_d + d * k as i64, d);
                    // D_v^m acts as (n + pt)^m on the k-th term
                    let mut npt = NilpotentPoly::constant(trunc, MpComplex::from_rational(prec, &n));
                    if trunc >= 1 {
                        npt.set_coeff(1, MpComplex::one(prec));
                    }
                    let mut term = c.clone();
                    for _ in 0..m {
                        term = term.mul(&npt);
                    }
                    // v^n = exp(n w)
                    let vn = w.scale_real(&real_from_rational(prec, &n)).exp();
                    term = term.scale(&vn);
                    sector_sum = sector_sum.add(&term);
                    // magnitude ladder uses the k-grid across sectors uniformly
                    if mags.len() <= k {
                        mags.push(0.0);
                    }
                    mags[k] = mags[k].max(poly_norm(&term));
                }
                let total = exp_ptw.mul(&sector_sum);
                for (idx, (bfd, i)) in basis.iter().enumerate() {
                    if bfd == fd {
                        comps[idx] = comps[idx].add(total.coeff(*i));
                    }
                }
            }
            let bound = tail_estimate(&mags, v_abs / self.v_c, 1)?;
            if bound > self.tol {
                return Err(Error::TailBound { bound, tol: self.tol, terms: self.k_terms });
            }
            out.push(TailBounded { value: comps, tail_bound: bound });
        }
        Ok(out)
    }

    pub fn eval(&self, v: &MpComplex) -> Result<TailBounded> {
        let w = v.ln();
        Ok(self.jet_at_log(&w, 0)?.pop().unwrap())
    }
}

/// Numeric FJRW H-function at fixed (z, lambda): scalar coefficients c_k of
/// u^k phi_{(k-1) mod d}, built from per-residue-class Gamma base values and
/// rational recurrences.
pub struct HNumericFjrw {
    pub prec: u32,
    pub z: MpComplex,
    pub lambda: MpComplex,
    pub k_terms: usize,
    pub tol: f64,
    model: Model,
    coeffs: Vec<MpComplex>, // index k-1 for k = 1..=k_terms
    radius: f64,
}

impl HNumericFjrw {
    pub fn new(
        model: &Model,
        prec: u32,
        z: &MpComplex,
        lambda: &MpComplex,
        k_terms: usize,
        tol: f64,
    ) -> Result<Self> {
        let d = model.d() as i64;
        let xi = lambda.div(z);
        let two_pi_i = MpComplex::two_pi_i(prec);
        let mut coeffs: Vec<MpComplex> = Vec::with_capacity(k_terms);
        for k in 1..=k_terms as i64 {
            if k <= d {
                // base value: z (2 pi i) (-1)^{k-1}
                //   / (Gamma(k) prod_{j: k q_j in Z} (-q_j xi)
                //      prod_j Gamma(1 - q_j (k + xi)))
                let mut denom = gamma_complex(&MpComplex::from_rational(prec, &rat_int(k)))?;
                for j in 0..model.ws.n() {
                    let qj = model.ws.q(j);
                    if is_integer(&(&qj * rat_int(k))) {
                        denom = denom.mul(&xi.scale_rational(&-qj.clone()));
                    }
                    // 1 - q_j k - q_j xi
                    let arg = MpComplex::from_rational(prec, &(rat_int(1) - &qj * rat_int(k)))
                        .sub(&xi.scale_rational(&qj));
                    denom = denom.mul(&gamma_complex(&arg)?);
                }
                let mut num = z.mul(&two_pi_i);
                if k % 2 == 0 {
                    num = num.neg();
                }
                coeffs.push(num.div(&denom));
            } else {
                // c_k = c_{k-d} (-1)^d prod_j prod_{c=1}^{w_j}
                //       (1 - q_j (k-d) - q_j xi - c) / prod_{c=0}^{d-1} (k-d+c)
                let prev = coeffs[(k - d - 1) as usize].clone();
                let mut val = if d % 2 == 1 { prev.neg() } else { prev };
                let kb = k - d;
                for j in 0..model.ws.n() {
                    let qj = model.ws.q(j);
                    let w = model.ws.weights()[j] as i64;
                    for c in 1..=w {
                        let constant = rat_int(1) - &qj * rat_int(kb) - rat_int(c);
                        let f = MpComplex::from_rational(prec, &constant)
                            .sub(&xi.scale_rational(&qj));
                        val = val.mul(&f);
                    }
                }
                let mut den = rat_int(1);
                for c in 0..d {
                    den *= rat_int(kb + c);
                }
                coeffs.push(val.scale_rational(&den.recip()));
            }
        }
        let vc = model.st.v_c.numer().to_f64().unwrap() / model.st.v_c.denom().to_f64().unwrap();
        let radius = vc.powf(-1.0 / d as f64);
        Ok(HNumericFjrw {
            prec,
            z: z.clone(),
            lambda: lambda.clone(),
            k_terms,
            tol,
            model: model.clone(),
            coeffs,
            radius,
        })
    }

    /// Components over phi keys 1..=d at the point u.
    pub fn eval(&self, u: &MpComplex) -> Result<TailBounded> {
        let prec = self.prec;
        let d = self.model.d() as i64;
        let u_abs = u.abs().to_f64();
        if !(u_abs < self.radius) {
            return Err(Error::OutsideRadius { point: u_abs, radius: self.radius });
        }
        let mut comps = vec![MpComplex::zero(prec); d as usize];
        let mut mags = Vec::with_capacity(self.k_terms);
        let mut upow = u.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = i as i64 + 1;
            let term = c.mul(&upow);
            let phi_idx = ((k - 1).rem_euclid(d)) as usize;
            comps[phi_idx] = comps[phi_idx].add(&term);
            mags.push(term.abs().to_f64());
            upow = upow.mul(u);
        }
        let vc = self.radius.powf(-(d as f64));
        let bound = tail_estimate(&mags, vc * u_abs.powi(d as i32), d as usize)?;
        if bound > self.tol {
            return Err(Error::TailBound { bound, tol: self.tol, terms: self.k_terms });
        }
        Ok(TailBounded { value: comps, tail_bound: bound })
    }
}

/// abs(det) of a small complex matrix via Gaussian elimination; used for the
/// jet-matrix invertibility check.
pub fn abs_det(mut m: Vec<Vec<MpComplex>>) -> f64 {
    let n = m.len();
    let prec = if n > 0 { m[0][0].prec() } else { 64 };
    let mut det = MpComplex::one(prec);
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|r| (r, m[r][col].abs().to_f64()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if mag == 0.0 {
            return 0.0;
        }
        m.swap(col, piv);
        if piv != col {
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].recip();
        for r in (col + 1)..n {
            let f = m[r][col].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let s = m[col][c].mul(&f);
                m[r][c] = m[r][c].sub(&s);
            }
        }
    }
    det.abs().to_f64()
}

//! Numeric transport of Picard-Fuchs solutions along paths in the log v
//! plane, and the comparison of the transported GW H-function against the
//! closed-form twisted Mellin-Barnes transformation of the FJRW H-function.

use num_traits::ToPrimitive;
use rug::Float;

use crate::error::{Error, Result};
use crate::hypergeom::{pf_operator, HNumericFjrw, HNumericGw, Nu, Side};
use crate::mp::{real_from_rational, MpComplex};
use crate::rational::rat_int;
use crate::ring::QAlgebra;
use crate::state::Model;

use super::umatrix::u_tw_numeric;

/// Piecewise-linear path in the log v plane through the l-th window.
#[derive(Clone, Debug)]
pub struct PathSpec {
    pub window: i64,
    pub waypoints: Vec<(f64, f64)>,
}

impl PathSpec {
    /// The default rectangle: from log v_c - 6 on the real axis, around the
    /// conifold at imaginary height (2l - 1) pi, down to the real axis and
    /// on to the endpoint log v = w_end.
    pub fn window_path(model: &Model, l: i64, w_end: f64) -> Self {
        let vc = model.st.v_c.numer().to_f64().unwrap() / model.st.v_c.denom().to_f64().unwrap();
        let wc = vc.ln();
        let h = (2 * l - 1) as f64 * std::f64::consts::PI;
        PathSpec {
            window: l,
            waypoints: vec![
                (wc - 6.0, 0.0),
                (wc - 2.0, 0.0),
                (wc - 2.0, h),
                (wc + 2.0, h),
                (wc + 2.0, 0.0),
                (w_end, 0.0),
            ],
        }
    }

    /// Start of the path.
    pub fn start(&self) -> (f64, f64) {
        self.waypoints[0]
    }

    /// Minimal distance of the path to the singularities
    /// log v_c + 2 pi i Z.
    pub fn singularity_margin(&self, model: &Model) -> f64 {
        let vc = model.st.v_c.numer().to_f64().unwrap() / model.st.v_c.denom().to_f64().unwrap();
        let wc = vc.ln();
        let mut min_d = f64::INFINITY;
        for seg in self.waypoints.windows(2) {
            let (ax, ay) = seg[0];
            let (bx, by) = seg[1];
            for m in -3..=3 {
                let (sx, sy) = (wc, 2.0 * std::f64::consts::PI * m as f64);
                // distance from point to segment
                let (dx, dy) = (bx - ax, by - ay);
                let len2 = dx * dx + dy * dy;
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    (((sx - ax) * dx + (sy - ay) * dy) / len2).clamp(0.0, 1.0)
                };
                let (px, py) = (ax + t * dx - sx, ay + t * dy - sy);
                min_d = min_d.min((px * px + py * py).sqrt());
            }
        }
        min_d
    }
}

/// State matrix: columns are solutions, rows the derivatives y^{(0..d-1)}.
pub type JetMatrix = Vec<Vec<MpComplex>>;

struct Companion {
    prec: u32,
    /// a_i(v) = lin[i].0 + lin[i].1 * v, coefficients of X^i = (z D_v)^i,
    /// including the z^i factor folded in numerically.
    lin: Vec<(MpComplex, MpComplex)>,
    d: usize,
}

impl Companion {
    fn new(model: &Model, prec: u32, z: &MpComplex, lambda: &MpComplex) -> Self {
        let op = pf_operator(model, Side::Gw, &Nu::zero(model.ws.n()));
        let d = model.d() as usize;
        let mut lin = vec![(MpComplex::zero(prec), MpComplex::zero(prec)); d + 1];
        for (shift, xpoly) in op.terms.iter() {
            for (i, c) in xpoly.0.iter().enumerate() {
                let val = crate::mp::zlaurent_eval(prec, c, z, lambda);
                if *shift == 0 {
                    lin[i].0 = lin[i].0.add(&val);
                } else {
                    debug_assert_eq!(*shift, model.d() as i64);
                    lin[i].1 = lin[i].1.add(&val);
                }
            }
        }
        // fold z^i into the X^i coefficients so the ODE is in D_v = d/dw
        for (i, c) in lin.iter_mut().enumerate() {
            let zi = z.powi(i as i64);
            c.0 = c.0.mul(&zi);
            c.1 = c.1.mul(&zi);
        }
        Companion { prec, lin, d }
    }

    /// dY/dw for one solution's state vector.
    fn rhs(&self, w: &MpComplex, y: &[MpComplex]) -> Vec<MpComplex> {
        let v = w.exp();
        let a = |i: usize| self.lin[i].0.add(&self.lin[i].1.mul(&v));
        let mut out = Vec::with_capacity(self.d);
        for i in 1..self.d {
            out.push(y[i].clone());
        }
        let top = a(self.d);
        let mut acc = MpComplex::zero(self.prec);
        for i in 0..self.d {
            acc = acc.add(&a(i).mul(&y[i]));
        }
        out.push(acc.div(&top).neg());
        out
    }
}

/// Cash-Karp embedded Runge-Kutta 4(5) tableau.
const CK_A: [[f64; 5]; 5] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
    [3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0, 0.0, 0.0],
    [-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0, 0.0],
    [
        1631.0 / 55296.0,
        175.0 / 512.0,
        575.0 / 13824.0,
        44275.0 / 110592.0,
        253.0 / 4096.0,
    ],
];
const CK_B5: [f64; 6] = [
    37.0 / 378.0,
    0.0,
    250.0 / 621.0,
    125.0 / 594.0,
    0.0,
    512.0 / 1771.0,
];
const CK_B4: [f64; 6] = [
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    1.0 / 4.0,
];

/// Result of a transport: endpoint jets and an accumulated error estimate.
pub struct TransportResult {
    pub jets: JetMatrix,
    pub error_estimate: f64,
    pub steps: usize,
}

/// Integrates the order-d Picard-Fuchs companion system for all columns of
/// `seeds` along the path, with adaptive local relative tolerance `tol`.
pub fn ode_transport(
    model: &Model,
    prec: u32,
    z: &MpComplex,
    lambda: &MpComplex,
    path: &PathSpec,
    seeds: &JetMatrix,
    tol: f64,
) -> Result<TransportResult> {
    if path.singularity_margin(model) < 0.5 {
        return Err(Error::Unsupported(
            "path passes too close to a Picard-Fuchs singularity".into(),
        ));
    }
    let comp = Companion::new(model, prec, z, lambda);
    let d = comp.d;
    let ncols = seeds.len();
    // state: per column
    let mut states: Vec<Vec<MpComplex>> = seeds.to_vec();
    for s in states.iter_mut() {
        assert_eq!(s.len(), d);
    }
    let mut err_acc = 0.0f64;
    let mut steps = 0usize;

    for seg in path.waypoints.windows(2) {
        let a = MpComplex::from_f64(prec, seg[0].0, seg[0].1);
        let b = MpComplex::from_f64(prec, seg[1].0, seg[1].1);
        let dir = b.sub(&a);
        let seg_len = dir.abs().to_f64();
        if seg_len == 0.0 {
            continue;
        }
        let mut t = 0.0f64; // segment parameter in [0, 1]
        let mut h = 0.05f64.min(1.0);
        while t < 1.0 {
            if h < 1e-12 {
                return Err(Error::StepUnderflow { at: format!("{:?} t={t}", seg) });
            }
            if t + h > 1.0 {
                h = 1.0 - t;
            }
            // one Cash-Karp step for all columns simultaneously
            let mut k: Vec<Vec<Vec<MpComplex>>> = Vec::with_capacity(6);
            let eval_at = |tt: f64, ys: &Vec<Vec<MpComplex>>| -> Vec<Vec<MpComplex>> {
                let w = a.add(&dir.scale_real(&Float::with_val(prec, tt)));
                ys.iter()
                    .map(|y| {
                        comp.rhs(&w, y)
                            .into_iter()
                            .map(|f| f.mul(&dir).scale_real(&Float::with_val(prec, h)))
                            .collect()
                    })
                    .collect()
            };
            k.push(eval_at(t, &states));
            let nodes = [1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0];
            for stage in 0..5 {
                let mut ys = states.clone();
                for (col, y) in ys.iter_mut().enumerate() {
                    for i in 0..d {
                        let mut acc = y[i].clone();
                        for (j, kj) in k.iter().enumerate() {
                            let c = CK_A[stage][j];
                            if c != 0.0 {
                                acc = acc.add(&kj[col][i].scale_real(&Float::with_val(prec, c)));
                            }
                        }
                        y[i] = acc;
                    }
                }
                k.push(eval_at(t + nodes[stage] * h, &ys));
            }
            // 5th and 4th order solutions
            let mut err_max = 0.0f64;
            let mut next = states.clone();
            for (col, y) in next.iter_mut().enumerate() {
                for i in 0..d {
                    let mut y5 = states[col][i].clone();
                    let mut y4 = states[col][i].clone();
                    for (j, kj) in k.iter().enumerate() {
                        if CK_B5[j] != 0.0 {
                            y5 = y5.add(&kj[col][i].scale_real(&Float::with_val(prec, CK_B5[j])));
                        }
                        if CK_B4[j] != 0.0 {
                            y4 = y4.add(&kj[col][i].scale_real(&Float::with_val(prec, CK_B4[j])));
                        }
                    }
                    let scale = y5.abs().to_f64().max(1.0);
                    err_max = err_max.max(y5.dist(&y4).to_f64() / scale);
                    y[i] = y5;
                }
            }
            if err_max <= tol {
                states = next;
                t += h;
                err_acc += err_max;
                steps += 1;
                let grow = if err_max == 0.0 {
                    5.0
                } else {
                    0.9 * (tol / err_max).powf(0.2)
                };
                h *= grow.clamp(0.2, 5.0);
            } else {
                h *= (0.9 * (tol / err_max).powf(0.25)).clamp(0.1, 0.9);
            }
        }
    }
    Ok(TransportResult { jets: states, error_estimate: err_acc, steps })
}

/// Per-endpoint outcome of the Mellin-Barnes comparison.
#[derive(Clone, Debug)]
pub struct MbSample {
    pub u: f64,
    pub max_rel_error: f64,
    pub per_component: Vec<f64>,
    pub error_estimate: f64,
}

/// Transports the d GW H-function components along the window-l path,
/// multiplies by u^{-xi} with the path-continued logarithm, and compares
/// against U^tw_{l'} applied to the FJRW H-function at the endpoint.
/// `compare_window` normally equals `transport_window`; passing a different
/// value implements the wrong-window negative control.
#[allow(clippy::too_many_arguments)]
pub fn verify_mb(
    model: &Model,
    prec: u32,
    z: &MpComplex,
    lambda: &MpComplex,
    transport_window: i64,
    compare_window: i64,
    endpoints_u: &[f64],
    integrator_tol: f64,
    series_terms: usize,
) -> Result<Vec<MbSample>> {
    let d = model.d() as usize;
    let xi = lambda.div(z);
    let h_gw = HNumericGw::new(model, prec, z, lambda, series_terms, 1e-25)?;
    let h_fjrw = HNumericFjrw::new(model, prec, z, lambda, series_terms, 1e-25)?;
    let u_tw = u_tw_numeric(model, compare_window, prec, &xi)?;

    let mut out = Vec::new();
    for &u_end in endpoints_u {
        let w_end = -(model.d() as f64) * u_end.ln();
        let path = PathSpec::window_path(model, transport_window, w_end);
        let (w0x, w0y) = path.start();
        let w0 = MpComplex::from_f64(prec, w0x, w0y);
        let jets = h_gw.jet_at_log(&w0, d - 1)?;
        // seeds: one column per GW component
        let ncomp = jets[0].value.len();
        let seeds: JetMatrix = (0..ncomp)
            .map(|c| (0..d).map(|m| jets[m].value[c].clone()).collect())
            .collect();
        let res = ode_transport(model, prec, z, lambda, &path, &seeds, integrator_tol)?;

        // u^{-xi} with the path-continued log: log u = -w_end / d, real here
        let log_u = MpComplex::from_f64(prec, -w_end / model.d() as f64, 0.0);
        let u_pow = log_u.mul(&xi).neg().exp();
        let lhs: Vec<MpComplex> = res.jets.iter().map(|col| col[0].mul(&u_pow)).collect();

        let u_val = MpComplex::from_f64(prec, u_end, 0.0);
        let fjrw = h_fjrw.eval(&u_val)?;
        let rhs = u_tw.apply(prec, &fjrw.value);

        let mut per = Vec::with_capacity(lhs.len());
        let mut worst = 0.0f64;
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            let denom = a.abs().to_f64().max(b.abs().to_f64());
            let rel = if denom == 0.0 {
                0.0
            } else {
                a.dist(b).to_f64() / denom
            };
            per.push(rel);
            worst = worst.max(rel);
        }
        out.push(MbSample {
            u: u_end,
            max_rel_error: worst,
            per_component: per,
            error_estimate: res.error_estimate,
        });
    }
    Ok(out)
}

/// Transport along a null path returns the seeds; used as a sanity check.
pub fn null_path(model: &Model) -> PathSpec {
    let vc = model.st.v_c.numer().to_f64().unwrap() / model.st.v_c.denom().to_f64().unwrap();
    let wc = vc.ln();
    PathSpec { window: 0, waypoints: vec![(wc - 6.0, 0.0), (wc - 6.0, 0.0)] }
}

pub use crate::rational::Rational as _Rational;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::WeightSystem;
    use crate::rational::rat;

    fn quintic() -> Model {
        Model::new(WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap())
    }

    fn setup(prec: u32) -> (Model, MpComplex, MpComplex) {
        let m = quintic();
        let z = MpComplex::one(prec);
        let lam = MpComplex::from_rational(prec, &rat(1, 10));
        (m, z, lam)
    }

    #[test]
    fn null_and_reverse_paths() {
        let prec = 128;
        let (m, z, lam) = setup(prec);
        let h = HNumericGw::new(&m, prec, &z, &lam, 80, 1e-15).unwrap();
        let w0 = {
            let p = null_path(&m);
            MpComplex::from_f64(prec, p.start().0, p.start().1)
        };
        let jets = h.jet_at_log(&w0, 4).unwrap();
        let seeds: JetMatrix = (0..5)
            .map(|c| (0..5).map(|mo| jets[mo].value[c].clone()).collect())
            .collect();
        // null path: states unchanged
        let res = ode_transport(&m, prec, &z, &lam, &null_path(&m), &seeds, 1e-12).unwrap();
        for (a, b) in res.jets.iter().flatten().zip(seeds.iter().flatten()) {
            assert!(a.dist(b).to_f64() < 1e-25);
        }
        // out-and-back path returns the seeds to ~10x the local tolerance
        let vc = m.st.v_c.numer().to_f64().unwrap() / m.st.v_c.denom().to_f64().unwrap();
        let wc = vc.ln();
        let tol = 1e-12;
        let path = PathSpec {
            window: 0,
            waypoints: vec![
                (wc - 6.0, 0.0),
                (wc - 2.0, -2.0),
                (wc - 6.0, 0.0),
            ],
        };
        let res = ode_transport(&m, prec, &z, &lam, &path, &seeds, tol).unwrap();
        for (a, b) in res.jets.iter().flatten().zip(seeds.iter().flatten()) {
            let scale = b.abs().to_f64().max(1.0);
            assert!(a.dist(b).to_f64() / scale < 10.0 * tol * res.steps as f64);
        }
    }
}

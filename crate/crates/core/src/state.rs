//! State spaces of the two theories and their structure maps: the narrow and
//! extended phi-bases on the LG side, the ambient Chen-Ruan classes of the
//! hypersurface and the full Chen-Ruan classes of the weighted projective
//! space on the GW side, with gradings, pairings, the involution and the
//! Galois action.

use std::collections::BTreeMap;

use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::geometry::{SectorTable, WeightSystem};
use crate::graded::GradedScalar;
use crate::nilpotent::NilpotentPoly;
use crate::rational::{fracp, rat, rat_int, Rational};
use crate::ring::{QAlgebra, Ring};
use crate::zlaurent::ZLaurent;

/// A weight system together with its sector table; the ambient data every
/// state-space operation needs.
#[derive(Clone, Debug)]
pub struct Model {
    pub ws: WeightSystem,
    pub st: SectorTable,
}

impl Model {
    pub fn new(ws: WeightSystem) -> Self {
        let st = SectorTable::new(&ws);
        Model { ws, st }
    }

    pub fn d(&self) -> u32 {
        self.ws.d()
    }

    /// Truncation order of the sector polynomial space.
    pub fn sector_trunc(&self, space: PSpace, fd: u32) -> Option<usize> {
        let nf = self.st.n_k[fd as usize];
        match space {
            PSpace::Ambient => {
                if nf >= 2 {
                    Some(nf - 2)
                } else {
                    None
                }
            }
            PSpace::Crp => {
                if nf >= 1 {
                    Some(nf - 1)
                } else {
                    None
                }
            }
        }
    }

    /// Sector keys (f*d) of the given space, in increasing order.
    pub fn sector_keys(&self, space: PSpace) -> Vec<u32> {
        self.st
            .frf
            .iter()
            .map(|f| (f * rat_int(self.d() as i64)).to_integer())
            .map(|n| u32::try_from(&n).expect("sector key"))
            .filter(|&fd| self.sector_trunc(space, fd).is_some())
            .collect()
    }

    /// Ordered basis of a sector space as (fd, p-power) labels.
    pub fn sector_basis(&self, space: PSpace) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for fd in self.sector_keys(space) {
            let t = self.sector_trunc(space, fd).unwrap();
            for i in 0..=t {
                out.push((fd, i));
            }
        }
        out
    }

    /// deg phi_{k-1} = 2 sum_j <(k-1) q_j>, k in 1..=d.
    pub fn phi_degree(&self, k: u32) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for j in 0..self.ws.n() {
            acc += fracp(&(self.ws.q(j) * rat_int(k as i64 - 1)));
        }
        acc * rat_int(2)
    }

    /// deg p^i 1_f = 2 i + 2 sum_j <f w_j>.
    pub fn sector_degree(&self, fd: u32, i: usize) -> Rational {
        let f = rat(fd as i64, self.d() as i64);
        let mut acc = Rational::from_integer(0.into());
        for j in 0..self.ws.n() {
            acc += fracp(&(&f * rat_int(self.ws.weights()[j] as i64)));
        }
        acc * rat_int(2) + rat_int(2 * i as i64)
    }

    /// 1 / prod_{j: f w_j integral} w_j, the weighted-projective volume of
    /// the sector fixed locus.
    pub fn sector_weight_product(&self, fd: u32) -> Rational {
        let d = self.d();
        let mut prod = rat_int(1);
        for j in 0..self.ws.n() {
            let w = self.ws.weights()[j];
            if (fd * w) % d == 0 {
                prod *= rat_int(w as i64);
            }
        }
        prod
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PSpace {
    /// H_amb(X_W): sector truncation N_f - 2, sectors with N_f >= 2 only.
    Ambient,
    /// H_CR(P(w)): sector truncation N_f - 1, all sectors.
    Crp,
}

/// A class on the phi-side: coefficients of phi_{k-1}, keyed by k in 1..=d.
/// Narrow classes keep their support inside Nar.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiClass<S: Ring> {
    d: u32,
    coeffs: BTreeMap<u32, S>,
}

impl<S: Ring> PhiClass<S> {
    pub fn zero(d: u32) -> Self {
        PhiClass { d, coeffs: BTreeMap::new() }
    }

    pub fn basis_vector(d: u32, k: u32, one: S) -> Self {
        let mut c = Self::zero(d);
        c.set(k, one);
        c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn set(&mut self, k: u32, v: S) {
        assert!((1..=self.d).contains(&k), "phi index out of range");
        if v.ring_is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn get(&self, k: u32) -> Option<&S> {
        self.coeffs.get(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.ring_is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in rhs.coeffs.iter() {
            let cur = out.coeffs.get(k).map(|c| c.ring_add(v)).unwrap_or_else(|| v.clone());
            if cur.ring_is_zero() {
                out.coeffs.remove(k);
            } else {
                out.coeffs.insert(*k, cur);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        PhiClass {
            d: self.d,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.ring_neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = PhiClass::zero(self.d);
        for (k, v) in self.coeffs.iter() {
            out.set(*k, v.ring_mul(s));
        }
        out
    }

    /// Support restricted to the narrow indices.
    pub fn is_narrow_supported(&self, st: &SectorTable) -> bool {
        self.coeffs.keys().all(|&k| st.is_narrow(k % self.d))
    }

    /// inv*: coefficient of phi_{k-1} moves to phi_{d-k-1} (k = d fixed).
    pub fn inv(&self) -> Self {
        let mut out = Self::zero(self.d);
        for (k, v) in self.coeffs.iter() {
            let kk = if *k == self.d { self.d } else { self.d - k };
            out.set(kk, v.clone());
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&S) -> U) -> PhiClass<U> {
        let mut out = PhiClass::zero(self.d);
        for (k, v) in self.coeffs.iter() {
            let u = f(v);
            if !u.ring_is_zero() {
                out.coeffs.insert(*k, u);
            }
        }
        out
    }
}

impl PhiClass<GradedScalar> {
    /// Galois action G: phi_{k-1} -> zeta^{-(k-1)} phi_{k-1}.
    pub fn galois(&self) -> Self {
        let mut out = Self::zero(self.d);
        for (k, v) in self.coeffs.iter() {
            let root = Cyclotomic::root_of_unity(self.d, -(*k as i64 - 1));
            out.set(*k, v.mul(&GradedScalar::from_cyclotomic(root)));
        }
        out
    }

    /// (2 pi i)^{deg_0 / 2} with deg_0 = -2 identically on the LG side.
    pub fn twopi_deg0_half(&self) -> Self {
        self.map(|v| v.mul_twopi_power(-1))
    }

    /// deg_0 action (multiplication by -2).
    pub fn deg0(&self) -> Self {
        self.map(|v| v.scale(&rat_int(-2)))
    }
}

/// A class on the sector side: per-sector truncated polynomials in the
/// hyperplane class p, keyed by f*d.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorClass<S: Ring> {
    space: PSpace,
    d: u32,
    sectors: BTreeMap<u32, NilpotentPoly<S>>,
}

impl<S: Ring> SectorClass<S> {
    pub fn zero(model: &Model, space: PSpace, sample: &S) -> Self {
        let mut sectors = BTreeMap::new();
        for fd in model.sector_keys(space) {
            let t = model.sector_trunc(space, fd).unwrap();
            sectors.insert(fd, NilpotentPoly::zero(t, sample));
        }
        SectorClass { space, d: model.d(), sectors }
    }

    pub fn space(&self) -> PSpace {
        self.space
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn sector(&self, fd: u32) -> Option<&NilpotentPoly<S>> {
        self.sectors.get(&fd)
    }

    pub fn sector_mut(&mut self, fd: u32) -> Option<&mut NilpotentPoly<S>> {
        self.sectors.get_mut(&fd)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &NilpotentPoly<S>)> {
        self.sectors.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.space, rhs.space);
        let mut out = self.clone();
        for (fd, p) in rhs.sectors.iter() {
            let cur = out.sectors.get(fd).expect("same sector layout").add(p);
            out.sectors.insert(*fd, cur);
        }
        out
    }

    pub fn neg(&self) -> Self {
        SectorClass {
            space: self.space,
            d: self.d,
            sectors: self.sectors.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        SectorClass {
            space: self.space,
            d: self.d,
            sectors: self.sectors.iter().map(|(k, v)| (*k, v.scale(s))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.values().all(|p| p.is_zero())
    }

    /// inv*: sector f -> <1 - f>, p fixed.
    pub fn inv(&self) -> Self {
        let mut out = self.clone();
        for (fd, poly) in self.sectors.iter() {
            let conj = (self.d - fd) % self.d;
            // sector layouts are inv-symmetric: N_f = N_{<1-f>}
            out.sectors.insert(conj, poly.clone());
        }
        out
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&S) -> U) -> SectorClass<U> {
        SectorClass {
            space: self.space,
            d: self.d,
            sectors: self.sectors.iter().map(|(k, v)| (*k, v.map(&f))).collect(),
        }
    }
}

impl SectorClass<GradedScalar> {
    /// Linear part of the Galois action: sector f scaled by e^{2 pi i f}.
    pub fn galois(&self) -> Self {
        let mut out = self.clone();
        for (fd, poly) in self.sectors.iter() {
            let root = GradedScalar::from_cyclotomic(Cyclotomic::root_of_unity(self.d, *fd as i64));
            out.sectors.insert(*fd, poly.scale(&root));
        }
        out
    }

    /// (2 pi i)^{deg_0/2}: p^n coefficients acquire grade n.
    pub fn twopi_deg0_half(&self) -> Self {
        let mut out = self.clone();
        for (fd, poly) in self.sectors.iter() {
            let mut q = poly.clone();
            for n in 0..=poly.trunc() {
                q.set_coeff(n, poly.coeff(n).mul_twopi_power(n as i64));
            }
            out.sectors.insert(*fd, q);
        }
        out
    }

    /// deg_0 action: p^n coefficient scaled by 2n.
    pub fn deg0(&self) -> Self {
        let mut out = self.clone();
        for (fd, poly) in self.sectors.iter() {
            let mut q = poly.clone();
            for n in 0..=poly.trunc() {
                q.set_coeff(n, poly.coeff(n).scale(&rat_int(2 * n as i64)));
            }
            out.sectors.insert(*fd, q);
        }
        out
    }
}

/// Narrow pairing (phi_{k-1}, phi_{l-1}) = (1/d) delta_{k+l,d}, extended
/// bilinearly. Mixed-grade products surface as errors upstream.
pub fn pair_narrow(model: &Model, a: &PhiClass<GradedScalar>, b: &PhiClass<GradedScalar>) -> GradedScalar {
    let d = model.d();
    let mut acc = GradedScalar::zero(d);
    for (k, av) in a.iter() {
        if *k >= d {
            continue; // k = d pairs with l = 0, outside the space
        }
        if let Some(bv) = b.get(d - k) {
            acc = acc.add(&av.mul(bv));
        }
    }
    acc.scale(&rat(1, d as i64))
}

/// Ambient pairing: sum over sectors f of
/// int_{P(w)_f cap X_W} a_f cup (inv* b)_f with int p^{N_f - 2} = d / prod w_j.
pub fn pair_ambient(model: &Model, a: &SectorClass<GradedScalar>, b: &SectorClass<GradedScalar>) -> GradedScalar {
    assert_eq!(a.space(), PSpace::Ambient);
    assert_eq!(b.space(), PSpace::Ambient);
    let d = model.d();
    let binv = b.inv();
    let mut acc = GradedScalar::zero(d);
    for (fd, ap) in a.iter() {
        let Some(bp) = binv.sector(*fd) else { continue };
        let prod = ap.mul(bp);
        let top = prod.coeff(prod.trunc());
        let norm = rat_int(d as i64) / model.sector_weight_product(*fd);
        acc = acc.add(&top.scale(&norm));
    }
    acc
}

/// e_T-twisted pairing on the extended state space with lambda_j = -q_j lambda:
/// (phi_{h}, phi_{k})_tw = (1/d) (prod_{j: <(h+1)q_j> = 0} -q_j lambda) delta_{h+k, d-2 (mod d)}.
pub fn pair_twisted_fjrw<S: QAlgebra>(
    model: &Model,
    a: &PhiClass<S>,
    b: &PhiClass<S>,
    lambda: &S,
) -> S {
    let d = model.d();
    let mut acc: Option<S> = None;
    for (ka, av) in a.iter() {
        // phi_{h} = phi_{ka-1}; partner needs h + k = d - 2 mod d,
        // i.e. kb = d - ka mod d in 1..=d labels.
        let kb = if *ka == d { d } else { d - ka };
        let Some(bv) = b.get(kb) else { continue };
        let mut term = av.ring_mul(bv);
        for j in 0..model.ws.n() {
            let h1 = rat_int(*ka as i64); // h + 1 = ka
            if crate::rational::is_integer(&(model.ws.q(j) * h1)) {
                term = term.ring_mul(&lambda.scale_rational(&(-model.ws.q(j))));
            }
        }
        acc = Some(match acc {
            None => term,
            Some(t) => t.ring_add(&term),
        });
    }
    let total = acc.unwrap_or_else(|| lambda.ring_zero());
    total.scale_rational(&rat(1, d as i64))
}

/// e_T-twisted pairing on H_CR(P(w)): inserts the Euler factor
/// (lambda + d p) per sector before integrating with
/// int_{P(w)_f} p^{N_f - 1} = 1 / prod_{j: f w_j in Z} w_j.
pub fn pair_twisted_gw<S: QAlgebra>(
    model: &Model,
    a: &SectorClass<S>,
    b: &SectorClass<S>,
    lambda: &S,
) -> S {
    assert_eq!(a.space(), PSpace::Crp);
    assert_eq!(b.space(), PSpace::Crp);
    let binv = b.inv();
    let mut acc: Option<S> = None;
    for (fd, ap) in a.iter() {
        let Some(bp) = binv.sector(*fd) else { continue };
        let t = ap.trunc();
        // euler = lambda + d p in the sector ring
        let mut euler = NilpotentPoly::constant(t, lambda.clone());
        if t >= 1 {
            euler.set_coeff(1, lambda.ring_one().scale_rational(&rat_int(model.d() as i64)));
        }
        let prod = ap.mul(bp).mul(&euler);
        let top = prod
            .coeff(t)
            .scale_rational(&model.sector_weight_product(*fd).recip());
        acc = Some(match acc {
            None => top,
            Some(cur) => cur.ring_add(&top),
        });
    }
    acc.unwrap_or_else(|| lambda.ring_zero())
}

/// Gram matrix of the narrow pairing in the phi-basis, as exact cyclotomics.
pub fn narrow_gram(model: &Model) -> Result<crate::cycmat::CycMat> {
    let nar = &model.st.nar;
    let d = model.d();
    let mut m = crate::cycmat::CycMat::zero(d, nar.len(), nar.len());
    for (i, &ki) in nar.iter().enumerate() {
        for (j, &kj) in nar.iter().enumerate() {
            let a = PhiClass::basis_vector(d, ki, GradedScalar::one(d));
            let b = PhiClass::basis_vector(d, kj, GradedScalar::one(d));
            let v = pair_narrow(model, &a, &b);
            if v.twopi_power() != 0 {
                return Err(crate::error::Error::MixedTwoPiGrade(v.twopi_power(), 0));
            }
            *m.at_mut(i, j) = v.value().clone();
        }
    }
    Ok(m)
}

/// Gram matrix of the ambient pairing in the (fd, p-power) basis.
pub fn ambient_gram(model: &Model) -> Result<crate::cycmat::CycMat> {
    let basis = model.sector_basis(PSpace::Ambient);
    let d = model.d();
    let one = GradedScalar::one(d);
    let mut m = crate::cycmat::CycMat::zero(d, basis.len(), basis.len());
    for (i, (fd_a, pa)) in basis.iter().enumerate() {
        for (j, (fd_b, pb)) in basis.iter().enumerate() {
            let mut a = SectorClass::zero(model, PSpace::Ambient, &one.ring_zero());
            a.sector_mut(*fd_a).unwrap().set_coeff(*pa, one.clone());
            let mut b = SectorClass::zero(model, PSpace::Ambient, &one.ring_zero());
            b.sector_mut(*fd_b).unwrap().set_coeff(*pb, one.clone());
            let v = pair_ambient(model, &a, &b);
            if v.twopi_power() != 0 {
                return Err(crate::error::Error::MixedTwoPiGrade(v.twopi_power(), 0));
            }
            *m.at_mut(i, j) = v.value().clone();
        }
    }
    Ok(m)
}

/// Symbolic-lambda scalar: the default coefficient ring for twisted pairings.
pub fn lambda_symbol() -> ZLaurent {
    ZLaurent::lambda(rat_int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog;

    fn quintic() -> Model {
        Model::new(WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap())
    }

    fn sextic() -> Model {
        Model::new(WeightSystem::new(&[1, 1, 1, 1, 2]).unwrap())
    }

    #[test]
    fn degrees_match_worked_examples() {
        let m = quintic();
        // phi_1 = phi_{k-1} with k = 2
        assert_eq!(m.phi_degree(2), rat_int(2));
        assert_eq!(m.sector_degree(0, 2), rat_int(4));
        let s = sextic();
        assert_eq!(s.phi_degree(2), rat_int(2));
    }

    #[test]
    fn narrow_pairing_values() {
        let m = quintic();
        let one = GradedScalar::one(5);
        // (phi_0, phi_3) = 1/5: keys k = 1 and k = 4.
        let a = PhiClass::basis_vector(5, 1, one.clone());
        let b = PhiClass::basis_vector(5, 4, one.clone());
        assert_eq!(pair_narrow(&m, &a, &b).rational_part().unwrap(), rat(1, 5));
        // (phi_0, phi_2) = 0: keys 1 and 3.
        let c = PhiClass::basis_vector(5, 3, one);
        assert!(pair_narrow(&m, &a, &c).is_zero());
    }

    #[test]
    fn ambient_pairing_values() {
        let m = quintic();
        let one = GradedScalar::one(5);
        let mut p1 = SectorClass::zero(&m, PSpace::Ambient, &GradedScalar::zero(5));
        p1.sector_mut(0).unwrap().set_coeff(1, one.clone());
        let mut p2 = SectorClass::zero(&m, PSpace::Ambient, &GradedScalar::zero(5));
        p2.sector_mut(0).unwrap().set_coeff(2, one.clone());
        assert_eq!(pair_ambient(&m, &p1, &p2).rational_part().unwrap(), rat_int(5));

        // sextic: (p, p^2) = 6/2 = 3
        let s = sextic();
        let one6 = GradedScalar::one(6);
        let mut q1 = SectorClass::zero(&s, PSpace::Ambient, &GradedScalar::zero(6));
        q1.sector_mut(0).unwrap().set_coeff(1, one6.clone());
        let mut q2 = SectorClass::zero(&s, PSpace::Ambient, &GradedScalar::zero(6));
        q2.sector_mut(0).unwrap().set_coeff(2, one6);
        assert_eq!(pair_ambient(&s, &q1, &q2).rational_part().unwrap(), rat_int(3));

        // degree selection: (1_0, p^3) = 5, (1_0, p^2) = 0 on the quintic
        let mut u = SectorClass::zero(&m, PSpace::Ambient, &GradedScalar::zero(5));
        u.sector_mut(0).unwrap().set_coeff(0, GradedScalar::one(5));
        let mut p3 = SectorClass::zero(&m, PSpace::Ambient, &GradedScalar::zero(5));
        p3.sector_mut(0).unwrap().set_coeff(3, GradedScalar::one(5));
        assert_eq!(pair_ambient(&m, &u, &p3).rational_part().unwrap(), rat_int(5));
        assert!(pair_ambient(&m, &u, &p2).is_zero());
    }

    #[test]
    fn twisted_pairing_values() {
        let m = quintic();
        let lam = lambda_symbol();
        // (phi_0, phi_3)_tw = 1/5 (empty lambda-product): keys 1, 4
        let a = PhiClass::basis_vector(5, 1, ZLaurent::one());
        let b = PhiClass::basis_vector(5, 4, ZLaurent::one());
        let v = pair_twisted_fjrw(&m, &a, &b, &lam);
        assert_eq!(v, ZLaurent::from_rational(rat(1, 5)));
        // (phi_4, phi_4)_tw = (1/5)(-lambda/5)^5: keys 5, 5
        let c = PhiClass::basis_vector(5, 5, ZLaurent::one());
        let v = pair_twisted_fjrw(&m, &c, &c, &lam);
        let expect = ZLaurent::monomial(0, 5, rat(-1, 5 * 5 * 5 * 5 * 5 * 5));
        assert_eq!(v, expect);
        // index condition failure: (phi_4, phi_0)_tw = 0 (keys 5 and 1)
        let e = PhiClass::basis_vector(5, 1, ZLaurent::one());
        assert!(pair_twisted_fjrw(&m, &c, &e, &lam).is_zero());
    }

    #[test]
    fn involution_and_galois() {
        let m = quintic();
        let one = GradedScalar::one(5);
        // inv(phi_0) = phi_3: key 1 -> key 4
        let a = PhiClass::basis_vector(5, 1, one.clone());
        assert!(a.inv().get(4).is_some());
        // inv is an involution on a mixed class
        let mut mixed = PhiClass::zero(5);
        mixed.set(1, one.clone());
        mixed.set(3, GradedScalar::from_rational(5, rat(2, 7)));
        assert_eq!(mixed.inv().inv(), mixed);
        // G(phi_1) = zeta^{-1} phi_1 (key 2, factor e^{-2 pi i (2-1)/5})
        let b = PhiClass::basis_vector(5, 2, one.clone());
        let g = b.galois();
        assert_eq!(
            g.get(2).unwrap().value(),
            &Cyclotomic::root_of_unity(5, -1)
        );
        // G^d = id
        let mut it = mixed.clone();
        for _ in 0..5 {
            it = it.galois();
        }
        assert_eq!(it, mixed);
        // GW: dG(1_{1/2}) = -1_{1/2} on the sextic
        let s = sextic();
        let mut c = SectorClass::zero(&s, PSpace::Crp, &GradedScalar::zero(6));
        c.sector_mut(3).unwrap().set_coeff(0, GradedScalar::one(6));
        let gc = c.galois();
        let got = gc.sector(3).unwrap().coeff(0);
        assert_eq!(got.value(), &Cyclotomic::root_of_unity(6, 3));
        assert_eq!(
            got.value().rational_value().unwrap(),
            rat_int(-1)
        );
    }

    #[test]
    fn galois_isometries_exact() {
        for ws in catalog() {
            let m = Model::new(ws);
            let d = m.d();
            // narrow: e^{-2 pi i/d} G is an isometry
            let mut a = PhiClass::zero(d);
            let mut b = PhiClass::zero(d);
            for (idx, &k) in m.st.nar.iter().enumerate() {
                a.set(k, GradedScalar::from_rational(d, rat(idx as i64 + 1, 3)));
                b.set(k, GradedScalar::from_cyclotomic(Cyclotomic::root_of_unity(d, idx as i64)));
            }
            let root = GradedScalar::from_cyclotomic(Cyclotomic::root_of_unity(d, -1));
            let ga = a.galois().scale(&root);
            let gb = b.galois().scale(&root);
            assert_eq!(pair_narrow(&m, &ga, &gb), pair_narrow(&m, &a, &b), "{}", m.ws);

            // ambient: dG is an isometry
            let zero = GradedScalar::zero(d);
            let mut x = SectorClass::zero(&m, PSpace::Ambient, &zero);
            let mut y = SectorClass::zero(&m, PSpace::Ambient, &zero);
            for (s, (fd, i)) in m.sector_basis(PSpace::Ambient).iter().enumerate() {
                x.sector_mut(*fd).unwrap().set_coeff(*i, GradedScalar::from_rational(d, rat(s as i64 + 2, 5)));
                y.sector_mut(*fd).unwrap().set_coeff(
                    *i,
                    GradedScalar::from_cyclotomic(Cyclotomic::root_of_unity(d, s as i64 + 1)),
                );
            }
            assert_eq!(
                pair_ambient(&m, &x.galois(), &y.galois()),
                pair_ambient(&m, &x, &y),
                "{}",
                m.ws
            );
        }
    }

    #[test]
    fn grams_nondegenerate_and_dims_match() {
        for ws in catalog() {
            let m = Model::new(ws);
            let ng = narrow_gram(&m).unwrap();
            let ag = ambient_gram(&m).unwrap();
            assert_eq!(ng.rows(), m.st.nar.len());
            assert_eq!(ag.rows(), m.sector_basis(PSpace::Ambient).len());
            assert_eq!(ng.rows(), ag.rows(), "|Nar| = dim H_amb for {}", m.ws);
            assert!(ng.inverse().is_ok(), "narrow Gram invertible for {}", m.ws);
            assert!(ag.inverse().is_ok(), "ambient Gram invertible for {}", m.ws);
        }
    }

    #[test]
    fn pairing_degree_complementarity() {
        for ws in catalog() {
            let m = Model::new(ws);
            let d = m.d();
            let hc2 = rat_int(2 * m.ws.hc());
            for &ka in &m.st.nar {
                for &kb in &m.st.nar {
                    let a = PhiClass::basis_vector(d, ka, GradedScalar::one(d));
                    let b = PhiClass::basis_vector(d, kb, GradedScalar::one(d));
                    let v = pair_narrow(&m, &a, &b);
                    if !v.is_zero() {
                        assert_eq!(m.phi_degree(ka) + m.phi_degree(kb), hc2);
                    }
                }
            }
            let basis = m.sector_basis(PSpace::Ambient);
            for (fa, ia) in basis.iter() {
                for (fb, ib) in basis.iter() {
                    let zero = GradedScalar::zero(d);
                    let mut a = SectorClass::zero(&m, PSpace::Ambient, &zero);
                    a.sector_mut(*fa).unwrap().set_coeff(*ia, GradedScalar::one(d));
                    let mut b = SectorClass::zero(&m, PSpace::Ambient, &zero);
                    b.sector_mut(*fb).unwrap().set_coeff(*ib, GradedScalar::one(d));
                    let v = pair_ambient(&m, &a, &b);
                    if !v.is_zero() {
                        assert_eq!(
                            m.sector_degree(*fa, *ia) + m.sector_degree(*fb, *ib),
                            hc2,
                            "sectors ({fa},{ia}) x ({fb},{ib}) on {}",
                            m.ws
                        );
                        // non-complementary sectors pair to zero
                        assert_eq!((fa + fb) % d, 0);
                    }
                }
            }
        }
    }
}

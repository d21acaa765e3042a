//! K-theoretic B-brane calculus on both sides of the correspondence:
//! Chern characters of graded Koszul matrix factorizations, images of the
//! Orlov functors as integer combinations of line bundles, the Koszul
//! relation and window reduction, Chern characters of line bundles in
//! Chen-Ruan cohomology, Euler pairings by two independent routes, and the
//! matrices of the autoequivalences acting on the numerical K-groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::cycmat::CycMat;
use crate::error::{Error, Result};
use crate::geometry::weighted_monomial_count;
use crate::graded::GradedScalar;
use crate::rational::{factorial, rat, rat_int, Rational};
use crate::state::{Model, PSpace, PhiClass, SectorClass};

/// ch({a,b}_q) = sum_{k in Nar} zeta^{qk} prod_j (1 - zeta^{-w_j k}) phi_{k-1}.
pub fn ch_koszul(model: &Model, q: i64) -> PhiClass<GradedScalar> {
    let d = model.d();
    let mut out = PhiClass::zero(d);
    for &k in &model.st.nar {
        let mut c = Cyclotomic::root_of_unity(d, q * k as i64);
        for j in 0..model.ws.n() {
            let w = model.ws.weights()[j] as i64;
            let factor = Cyclotomic::one(d).sub(&Cyclotomic::root_of_unity(d, -(w * k as i64)));
            c = c.mul(&factor);
        }
        out.set(k, GradedScalar::from_cyclotomic(c));
    }
    out
}

/// Integer combination of line-bundle classes [O(m)].
#[derive(Clone, Debug, PartialEq, Default)]
pub struct KClass {
    coeffs: BTreeMap<i64, BigInt>,
}

impl KClass {
    pub fn zero() -> Self {
        KClass::default()
    }

    pub fn line_bundle(m: i64) -> Self {
        let mut c = Self::zero();
        c.insert(m, BigInt::one());
        c
    }

    pub fn insert(&mut self, m: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let e = self.coeffs.entry(m).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.coeffs.iter() {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        KClass {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        KClass {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }
}

/// The image of {a,b}_q under the Orlov functor Phi_l at K-theory level:
/// with q - l = t d + m, 0 <= m < d,
/// sum over subsets S with weight sum <= m of (-1)^{|S|+1} [O(l + m - w(S))].
pub fn orlov_kclass(model: &Model, q: i64, l: i64) -> KClass {
    let d = model.d() as i64;
    let m = (q - l).rem_euclid(d);
    let n = model.ws.n();
    let mut out = KClass::zero();
    for mask in 0u32..(1 << n) {
        let mut wsum: i64 = 0;
        for j in 0..n {
            if mask & (1 << j) != 0 {
                wsum += model.ws.weights()[j] as i64;
            }
        }
        if wsum > m {
            continue;
        }
        let sign = if mask.count_ones() % 2 == 0 {
            -BigInt::one() // (-1)^{|S|+1}
        } else {
            BigInt::one()
        };
        out.insert(l + m - wsum, sign);
    }
    out
}

/// The Koszul relation sum_S (-1)^{|S|} [O(n - w(S))] = 0 rewrites any twist
/// outside the window [0, d-1] in terms of twists strictly closer to it;
/// iterating yields the canonical window representative.
pub fn koszul_reduce(model: &Model, c: &KClass) -> KClass {
    let d = model.d() as i64;
    let n = model.ws.n();
    let mut cur = c.clone();
    loop {
        let too_high = cur.max_twist().filter(|&m| m >= d);
        let too_low = cur.min_twist().filter(|&m| m < 0);
        if too_high.is_none() && too_low.is_none() {
            return cur;
        }
        if let Some(mhi) = too_high {
            let coeff = cur.coeffs.get(&mhi).cloned().unwrap();
            // [O(n)] = - sum_{S nonempty} (-1)^{|S|} [O(n - w(S))]
            cur.insert(mhi, -coeff.clone());
            for mask in 1u32..(1 << n) {
                let wsum: i64 = (0..n)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| model.ws.weights()[j] as i64)
                    .sum();
                let sign = if mask.count_ones() % 2 == 0 { -BigInt::one() } else { BigInt::one() };
                cur.insert(mhi - wsum, sign * &coeff);
            }
        } else if let Some(mlo) = too_low {
            let coeff = cur.coeffs.get(&mlo).cloned().unwrap();
            // use the relation at n = mlo + d; the S = {1..N} term is [O(mlo)]
            let sign_full = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            cur.insert(mlo, -coeff.clone());
            for mask in 0u32..((1 << n) - 1) {
                let wsum: i64 = (0..n)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| model.ws.weights()[j] as i64)
                    .sum();
                let sign = if mask.count_ones() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                // [O(mlo)] = -sign_full^{-1} * sum_{S proper} (-1)^{|S|} [O(mlo + d - w(S))]
                cur.insert(mlo + d - wsum, -&sign_full * sign * &coeff);
            }
        }
    }
}

/// Chern character of a line-bundle combination in the ambient Chen-Ruan
/// cohomology: ch(O(m)) = sum_f e^{2 pi i m f} e^{m p} 1_f.
pub fn ch_kclass(model: &Model, c: &KClass) -> SectorClass<GradedScalar> {
    let d = model.d();
    let zero = GradedScalar::zero(d);
    let mut out = SectorClass::zero(model, PSpace::Ambient, &zero);
    for (m, coeff) in c.iter() {
        let coeff_rat = Rational::from(coeff.clone());
        for fd in model.sector_keys(PSpace::Ambient) {
            let t = model.sector_trunc(PSpace::Ambient, fd).unwrap();
            let root = Cyclotomic::root_of_unity(d, m * fd as i64);
            let mut add = crate::nilpotent::NilpotentPoly::zero(t, &zero);
            for i in 0..=t {
                // m^i / i!
                let mut v = rat_int(1);
                for _ in 0..i {
                    v *= rat_int(*m);
                }
                v /= Rational::from(factorial(i as u64));
                add.set_coeff(
                    i,
                    GradedScalar::from_cyclotomic(root.scale(&(&v * &coeff_rat))),
                );
            }
            let cur = out.sector(fd).unwrap().add(&add);
            *out.sector_mut(fd).unwrap() = cur;
        }
    }
    out
}

/// Euler characteristic chi(X_W, O(m)) via the restriction sequence and
/// Serre duality on the ambient weighted projective space:
/// chi = h(m) - h(m-d) + (-1)^{N-1} (h(-m-d) - h(-m)), h = monomial count.
pub fn euler_cy(model: &Model, m: i64) -> BigInt {
    let d = model.d() as i64;
    let h = |x: i64| weighted_monomial_count(&model.ws, x);
    let sign = if model.ws.n() % 2 == 0 { -BigInt::one() } else { BigInt::one() };
    h(m) - h(m - d) + sign * (h(-m - d) - h(-m))
}

/// chi(E, F) for K-classes, bilinear over chi([O(a)], [O(b)]) = euler_cy(b - a).
pub fn euler_pairing_cy(model: &Model, e: &KClass, f: &KClass) -> BigInt {
    let mut acc = BigInt::zero();
    for (a, ca) in e.iter() {
        for (b, cb) in f.iter() {
            acc += ca * cb * euler_cy(model, b - a);
        }
    }
    acc
}

/// Narrow-sector Hirzebruch-Riemann-Roch for matrix factorizations with
/// narrow-supported Chern characters:
/// chi(E,F) = (1/d) sum_{k in Nar} prod_j (1 - zeta^{k w_j})^{-1}
///            ch(E)_k ch(F)_{d-k}.
/// The result is asserted rational; a non-rational residue is an identity
/// failure.
pub fn euler_pairing_mf_ch(
    model: &Model,
    ch_e: &PhiClass<GradedScalar>,
    ch_f: &PhiClass<GradedScalar>,
) -> Result<Rational> {
    if !ch_e.is_narrow_supported(&model.st) || !ch_f.is_narrow_supported(&model.st) {
        return Err(Error::Unsupported(
            "HRR narrow formula needs narrow-supported Chern characters".into(),
        ));
    }
    let d = model.d();
    let mut acc = GradedScalar::zero(d);
    for &k in &model.st.nar {
        let Some(ek) = ch_e.get(k) else { continue };
        let Some(fk) = ch_f.get(d - k) else { continue };
        let mut denom = Cyclotomic::one(d);
        for j in 0..model.ws.n() {
            let w = model.ws.weights()[j] as i64;
            denom = denom.mul(&Cyclotomic::one(d).sub(&Cyclotomic::root_of_unity(d, k as i64 * w)));
        }
        let term = ek.mul(fk).mul(&GradedScalar::from_cyclotomic(denom.inv()?));
        acc = acc.checked_add(&term)?;
    }
    acc.scale(&rat(1, d as i64)).rational_part()
}

/// A formal linear combination of Koszul matrix factorizations {a,b}_q.
pub type MfCombo = Vec<(i64, Rational)>;

pub fn ch_mf_combo(model: &Model, combo: &MfCombo) -> PhiClass<GradedScalar> {
    let mut acc = PhiClass::zero(model.d());
    for (q, c) in combo {
        acc = acc.add(&ch_koszul(model, *q).scale(&GradedScalar::from_rational(model.d(), c.clone())));
    }
    acc
}

pub fn euler_pairing_mf(model: &Model, e: &MfCombo, f: &MfCombo) -> Result<Rational> {
    euler_pairing_mf_ch(model, &ch_mf_combo(model, e), &ch_mf_combo(model, f))
}

/// Flattens an ambient class into exact cyclotomic coordinates over the
/// (sector, p-power) basis. Requires every coefficient at grade zero.
pub fn ambient_coords(model: &Model, a: &SectorClass<GradedScalar>) -> Result<Vec<Cyclotomic>> {
    let mut out = Vec::new();
    for (fd, i) in model.sector_basis(PSpace::Ambient) {
        let c = a.sector(fd).expect("ambient sector").coeff(i);
        if c.twopi_power() != 0 {
            return Err(Error::MixedTwoPiGrade(c.twopi_power(), 0));
        }
        out.push(c.value().clone());
    }
    Ok(out)
}

pub fn narrow_coords(model: &Model, a: &PhiClass<GradedScalar>) -> Result<Vec<Cyclotomic>> {
    let mut out = Vec::new();
    for &k in &model.st.nar {
        match a.get(k) {
            None => out.push(Cyclotomic::zero(model.d())),
            Some(c) => {
                if c.twopi_power() != 0 {
                    return Err(Error::MixedTwoPiGrade(c.twopi_power(), 0));
                }
                out.push(c.value().clone());
            }
        }
    }
    Ok(out)
}

/// The generating bases used for autoequivalence matrices:
/// on the CY side lowest line-bundle twists whose inv* ch are independent,
/// on the LG side lowest q-indices. Both are rank-checked exactly.
pub struct ChBases {
    /// Line-bundle twists indexing the CY-side basis.
    pub cy_twists: Vec<i64>,
    /// Matrix with columns inv* ch(O(i)) in ambient coordinates.
    pub cy_mat: CycMat,
    pub cy_inv: CycMat,
    /// q-indices of the LG-side Koszul basis.
    pub lg_qs: Vec<i64>,
    /// Matrix with columns inv* ch({a,b}_q) in narrow coordinates.
    pub lg_mat: CycMat,
    pub lg_inv: CycMat,
}

pub fn ch_bases(model: &Model) -> Result<ChBases> {
    let d = model.d();
    let rank_target = model.st.nar.len();

    let mut cy_twists = Vec::new();
    let mut cols: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut i = 0i64;
    while cy_twists.len() < rank_target && i < 4 * d as i64 {
        let cand = ambient_coords(model, &ch_kclass(model, &KClass::line_bundle(i)).inv())?;
        let mut trial = cols.clone();
        trial.push(cand.clone());
        if CycMat::from_columns(d, &trial).rank() == trial.len() {
            cols = trial;
            cy_twists.push(i);
        }
        i += 1;
    }
    if cy_twists.len() < rank_target {
        return Err(Error::DependentGenerators);
    }
    let cy_mat = CycMat::from_columns(d, &cols);
    let cy_inv = cy_mat.inverse()?;

    let mut lg_qs = Vec::new();
    let mut cols: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut q = 0i64;
    while lg_qs.len() < rank_target && q < 4 * d as i64 {
        let cand = narrow_coords(model, &ch_koszul(model, q).inv())?;
        let mut trial = cols.clone();
        trial.push(cand.clone());
        if CycMat::from_columns(d, &trial).rank() == trial.len() {
            cols = trial;
            lg_qs.push(q);
        }
        q += 1;
    }
    if lg_qs.len() < rank_target {
        return Err(Error::DependentGenerators);
    }
    let lg_mat = CycMat::from_columns(d, &cols);
    let lg_inv = lg_mat.inverse()?;

    Ok(ChBases { cy_twists, cy_mat, cy_inv, lg_qs, lg_mat, lg_inv })
}

/// Functors whose induced maps on ch-vectors are produced as exact matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Autoeq {
    /// E -> E tensor O(j) on the CY side.
    TensorO(i64),
    /// Grading shift (1) on the LG side.
    GradingShift,
    /// Spherical twist T_O: [E] -> [E] - chi(O, E) [O] on the CY side.
    SphericalTwist,
    /// Orlov functor Phi_l, mapping the LG basis to the CY basis.
    Orlov(i64),
}

impl std::fmt::Display for Autoeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Autoeq::TensorO(j) => write!(f, "tensor_O({j})"),
            Autoeq::GradingShift => write!(f, "grading_shift(1)"),
            Autoeq::SphericalTwist => write!(f, "spherical_T_O"),
            Autoeq::Orlov(l) => write!(f, "orlov_Phi({l})"),
        }
    }
}

/// Exact matrix of the induced map on ch-vectors in the rank-checked bases.
pub fn autoeq_matrix(model: &Model, bases: &ChBases, functor: Autoeq) -> Result<CycMat> {
    let d = model.d();
    match functor {
        Autoeq::TensorO(j) => {
            let cols: Result<Vec<Vec<Cyclotomic>>> = bases
                .cy_twists
                .iter()
                .map(|&i| {
                    let img = ch_kclass(model, &KClass::line_bundle(i + j)).inv();
                    Ok(bases.cy_inv.mul_vec(&ambient_coords(model, &img)?))
                })
                .collect();
            Ok(CycMat::from_columns(d, &cols?))
        }
        Autoeq::SphericalTwist => {
            let cols: Result<Vec<Vec<Cyclotomic>>> = bases
                .cy_twists
                .iter()
                .map(|&i| {
                    let chi = euler_cy(model, i);
                    let img = KClass::line_bundle(i).sub(&KClass::line_bundle(0).scale(&chi));
                    let v = ambient_coords(model, &ch_kclass(model, &img).inv())?;
                    Ok(bases.cy_inv.mul_vec(&v))
                })
                .collect();
            Ok(CycMat::from_columns(d, &cols?))
        }
        Autoeq::GradingShift => {
            let cols: Result<Vec<Vec<Cyclotomic>>> = bases
                .lg_qs
                .iter()
                .map(|&q| {
                    let img = ch_koszul(model, q + 1).inv();
                    Ok(bases.lg_inv.mul_vec(&narrow_coords(model, &img)?))
                })
                .collect();
            Ok(CycMat::from_columns(d, &cols?))
        }
        Autoeq::Orlov(l) => {
            let cols: Result<Vec<Vec<Cyclotomic>>> = bases
                .lg_qs
                .iter()
                .map(|&q| {
                    let img = ch_kclass(model, &orlov_kclass(model, q, l)).inv();
                    Ok(bases.cy_inv.mul_vec(&ambient_coords(model, &img)?))
                })
                .collect();
            Ok(CycMat::from_columns(d, &cols?))
        }
    }
}

/// Outcome of one exact monodromy relation check.
#[derive(Clone, Debug)]
pub struct MonodromyReport {
    pub canonaco_karp: bool,
    pub orlov_pair_is_twist: bool,
}

/// Verifies, on ch-vectors:
/// (M_{O(-1)} M_{T_O}^{-1})^d = Id   and   M_{Phi_0} M_{Phi_1}^{-1} = M_{T_O}.
pub fn monodromy_check(model: &Model) -> Result<MonodromyReport> {
    let bases = ch_bases(model)?;
    let d = model.d();
    let m_tensor = autoeq_matrix(model, &bases, Autoeq::TensorO(-1))?;
    let m_twist = autoeq_matrix(model, &bases, Autoeq::SphericalTwist)?;
    let m_phi0 = autoeq_matrix(model, &bases, Autoeq::Orlov(0))?;
    let m_phi1 = autoeq_matrix(model, &bases, Autoeq::Orlov(1))?;

    let comp = m_tensor.mul(&m_twist.inverse()?);
    let canonaco_karp = comp.pow(d) == CycMat::identity(d, comp.rows());
    let orlov_pair_is_twist = m_phi0.mul(&m_phi1.inverse()?) == m_twist;
    Ok(MonodromyReport { canonaco_karp, orlov_pair_is_twist })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{catalog, WeightSystem};

    fn quintic() -> Model {
        Model::new(WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap())
    }

    #[test]
    fn ch_koszul_values() {
        let m = quintic();
        let ch0 = ch_koszul(&m, 0);
        // coefficient of phi_0 (key k=1) is (1 - zeta^{-1})^5
        let expect = Cyclotomic::one(5)
            .sub(&Cyclotomic::root_of_unity(5, -1))
            .pow(5);
        assert_eq!(ch0.get(1).unwrap().value(), &expect);
        // q = 1: coefficient of phi_{k-1} is zeta^k (1 - zeta^{-k})^5
        let ch1 = ch_koszul(&m, 1);
        for k in [1u32, 2, 3, 4] {
            let expect = Cyclotomic::root_of_unity(5, k as i64)
                .mul(&Cyclotomic::one(5).sub(&Cyclotomic::root_of_unity(5, -(k as i64))).pow(5));
            assert_eq!(ch1.get(k).unwrap().value(), &expect, "k = {k}");
        }
    }

    #[test]
    fn koszul_chern_characters_span_narrow_part() {
        for ws in catalog() {
            let m = Model::new(ws);
            let rank = m.st.nar.len();
            let cols: Vec<Vec<Cyclotomic>> = (0..rank as i64)
                .map(|q| narrow_coords(&m, &ch_koszul(&m, q)).unwrap())
                .collect();
            assert_eq!(CycMat::from_columns(m.d(), &cols).rank(), rank, "{}", m.ws);
        }
    }

    #[test]
    fn orlov_kclass_examples() {
        let m = quintic();
        // q=0, l=0 -> -[O(0)]
        let k = orlov_kclass(&m, 0, 0);
        let mut expect = KClass::zero();
        expect.insert(0, BigInt::from(-1));
        assert_eq!(k, expect);
        // q=1, l=0 -> -[O(1)] + 5[O(0)]
        let k = orlov_kclass(&m, 1, 0);
        let mut expect = KClass::zero();
        expect.insert(1, BigInt::from(-1));
        expect.insert(0, BigInt::from(5));
        assert_eq!(k, expect);
        // q=0, l=-1 (m=1) -> -[O(0)] + 5[O(-1)]
        let k = orlov_kclass(&m, 0, -1);
        let mut expect = KClass::zero();
        expect.insert(0, BigInt::from(-1));
        expect.insert(-1, BigInt::from(5));
        assert_eq!(k, expect);
    }

    #[test]
    fn koszul_reduction() {
        let m = quintic();
        // [O(5)] -> 5[O(4)] - 10[O(3)] + 10[O(2)] - 5[O(1)] + [O(0)]
        let r = koszul_reduce(&m, &KClass::line_bundle(5));
        let mut expect = KClass::zero();
        for (tw, c) in [(4, 5), (3, -10), (2, 10), (1, -5), (0, 1)] {
            expect.insert(tw, BigInt::from(c));
        }
        assert_eq!(r, expect);
        // idempotence
        assert_eq!(koszul_reduce(&m, &r), r);
        // reduction is a ch-congruence
        let c = KClass::line_bundle(7).sub(&KClass::line_bundle(-3).scale(&BigInt::from(2)));
        let red = koszul_reduce(&m, &c);
        assert_eq!(ch_kclass(&m, &c), ch_kclass(&m, &red));
        // and an euler-pairing congruence
        let probe = KClass::line_bundle(1);
        assert_eq!(
            euler_pairing_cy(&m, &probe, &c),
            euler_pairing_cy(&m, &probe, &red)
        );
        assert!((0..m.d() as i64).contains(&red.min_twist().unwrap()));
        assert!((0..m.d() as i64).contains(&red.max_twist().unwrap()));
    }

    #[test]
    fn ch_line_bundles() {
        let m = quintic();
        // ch(O(0)) = sum_f 1_f
        let ch = ch_kclass(&m, &KClass::line_bundle(0));
        let s = ch.sector(0).unwrap();
        assert_eq!(s.coeff(0), &GradedScalar::one(5));
        for i in 1..=3 {
            assert!(s.coeff(i).is_zero());
        }
        // ch(O(1)) = e^p on the untwisted sector: 1 + p + p^2/2 + p^3/6
        let ch = ch_kclass(&m, &KClass::line_bundle(1));
        let s = ch.sector(0).unwrap();
        assert_eq!(s.coeff(0).rational_part().unwrap(), rat_int(1));
        assert_eq!(s.coeff(1).rational_part().unwrap(), rat_int(1));
        assert_eq!(s.coeff(2).rational_part().unwrap(), rat(1, 2));
        assert_eq!(s.coeff(3).rational_part().unwrap(), rat(1, 6));
        // sextic: the f = 1/2 sector is an empty X-sector and carries nothing
        let s6 = Model::new(WeightSystem::new(&[1, 1, 1, 1, 2]).unwrap());
        let ch = ch_kclass(&s6, &KClass::line_bundle(1));
        assert!(ch.sector(3).is_none());
    }

    #[test]
    fn euler_cy_values() {
        let m = quintic();
        assert_eq!(euler_cy(&m, 0), BigInt::zero());
        assert_eq!(euler_cy(&m, 1), BigInt::from(5));
        assert_eq!(euler_cy(&m, 5), BigInt::from(125));
        // chi([O(0)], [O(1)]) = 5, line-bundle bilinearity
        assert_eq!(
            euler_pairing_cy(&m, &KClass::line_bundle(0), &KClass::line_bundle(1)),
            BigInt::from(5)
        );
        let mo = KClass::line_bundle(0).neg();
        assert_eq!(euler_pairing_cy(&m, &mo, &mo), BigInt::zero());
        let f = KClass::line_bundle(1).neg().add(&KClass::line_bundle(0).scale(&BigInt::from(5)));
        assert_eq!(euler_pairing_cy(&m, &mo, &f), BigInt::from(5));
    }

    #[test]
    fn hrr_narrow_values() {
        let m = quintic();
        let e0: MfCombo = vec![(0, rat_int(1))];
        let e1: MfCombo = vec![(1, rat_int(1))];
        assert_eq!(euler_pairing_mf(&m, &e0, &e0).unwrap(), rat_int(0));
        assert_eq!(euler_pairing_mf(&m, &e0, &e1).unwrap(), rat_int(5));
    }

    #[test]
    fn hrr_serre_symmetry_via_orlov_images() {
        // chi_mf(E, F) = (-1)^hc chi_mf(F, E) checked against the CY-side
        // pairing of Orlov images.
        for ws in catalog() {
            let m = Model::new(ws);
            let sign = if m.ws.hc() % 2 == 0 { 1 } else { -1 };
            for (q1, q2) in [(0i64, 1i64), (2, 5), (1, 3)] {
                let a = euler_pairing_mf(&m, &vec![(q1, rat_int(1))], &vec![(q2, rat_int(1))]).unwrap();
                let b = euler_pairing_mf(&m, &vec![(q2, rat_int(1))], &vec![(q1, rat_int(1))]).unwrap();
                assert_eq!(a, b * rat_int(sign), "{} q={q1},{q2}", m.ws);
                let ka = orlov_kclass(&m, q1, 0);
                let kb = orlov_kclass(&m, q2, 0);
                assert_eq!(
                    Rational::from(euler_pairing_cy(&m, &ka, &kb)),
                    a,
                    "functor invariance {} q={q1},{q2}",
                    m.ws
                );
            }
        }
    }

    #[test]
    fn galois_shift_relation_exact() {
        // e^{-2 pi i/d} G (inv* ch {a,b}_q) = inv* ch {a,b}_{q+1}
        for ws in catalog() {
            let m = Model::new(ws);
            let d = m.d();
            for q in 0..2 * d as i64 {
                let lhs = ch_koszul(&m, q)
                    .inv()
                    .galois()
                    .scale(&GradedScalar::from_cyclotomic(Cyclotomic::root_of_unity(d, -1)));
                let rhs = ch_koszul(&m, q + 1).inv();
                assert_eq!(lhs, rhs, "{} q={q}", m.ws);
            }
        }
    }

    #[test]
    fn shift_by_d_acts_trivially_on_ch() {
        for ws in catalog() {
            let m = Model::new(ws);
            let d = m.d() as i64;
            for (q, l) in [(0i64, 0i64), (3, 1), (5, -2)] {
                let a = ch_kclass(&m, &orlov_kclass(&m, q + d, l));
                let b = ch_kclass(&m, &orlov_kclass(&m, q, l));
                assert_eq!(a, b, "{} q={q} l={l}", m.ws);
            }
        }
    }

    #[test]
    fn autoeq_matrices_and_monodromy() {
        for ws in catalog().into_iter().take(2) {
            let m = Model::new(ws);
            let d = m.d();
            let bases = ch_bases(&m).unwrap();
            // spherical twist fixes [O]: chi(O, O) = 0
            let tw = autoeq_matrix(&m, &bases, Autoeq::SphericalTwist).unwrap();
            let e0: Vec<Cyclotomic> = (0..tw.rows())
                .map(|i| if i == 0 { Cyclotomic::one(d) } else { Cyclotomic::zero(d) })
                .collect();
            assert_eq!(tw.mul_vec(&e0), e0);
            // grading shift has order d
            let s = autoeq_matrix(&m, &bases, Autoeq::GradingShift).unwrap();
            assert_eq!(s.pow(d), CycMat::identity(d, s.rows()));
            // tensoring matrix is invertible with root-of-unity determinant
            let t = autoeq_matrix(&m, &bases, Autoeq::TensorO(-1)).unwrap();
            assert!(t.inverse().is_ok());
            let det = t.det();
            assert_eq!(det.pow(d as u64), Cyclotomic::one(d));

            let rep = monodromy_check(&m).unwrap();
            assert!(rep.canonaco_karp, "{}", m.ws);
            assert!(rep.orlov_pair_is_twist, "{}", m.ws);

            // negative control: exponent d-1 does not give the identity
            let comp = t.mul(&tw.inverse().unwrap());
            assert_ne!(comp.pow(d - 1), CycMat::identity(d, comp.rows()), "{}", m.ws);
        }
    }
}

//! Twisted and generalized I-functions, H-functions, the Picard-Fuchs/GKZ
//! operators annihilating them, mirror maps, and high-precision numeric
//! evaluation with tail bounds.
//!
//! Symbolic series carry exact coefficients (Laurent in z, polynomial in
//! lambda, rational); identity checks on them are zero-tolerance. Numeric
//! series fix (z, lambda) and a precision and are built by running products,
//! independent of the symbolic generators.

mod num;
mod pf;
mod sym;

pub use num::{HNumericFjrw, HNumericGw, TailBounded};
pub use pf::{coordinate_change_matches, pf_operator, PfOperator};
pub use sym::{
    build_series, mirror_map, verify_gkz_ladder, ClassTerm, MirrorMapData, Side, SymKind,
    SymSeries,
};

use crate::rational::Rational;

/// Multi-index nu = (nu_0, ..., nu_N) of the GKZ generator lattice
/// B = { nu : nu_i + q_i nu_0 >= 0 }.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nu(pub Vec<i64>);

impl Nu {
    pub fn zero(n: usize) -> Self {
        Nu(vec![0; n + 1])
    }

    /// nu(l) = (l, -floor(q_1 l), ..., -floor(q_N l)).
    pub fn window(model: &crate::state::Model, l: i64) -> Self {
        let mut v = vec![l];
        for j in 0..model.ws.n() {
            v.push(-crate::rational::floor_i64(
                &(model.ws.q(j) * Rational::from_integer(l.into())),
            ));
        }
        Nu(v)
    }

    pub fn in_lattice(&self, model: &crate::state::Model) -> bool {
        if self.0.len() != model.ws.n() + 1 {
            return false;
        }
        (0..model.ws.n()).all(|j| {
            let v = Rational::from_integer(self.0[j + 1].into())
                + model.ws.q(j) * Rational::from_integer(self.0[0].into());
            v >= Rational::from_integer(0.into())
        })
    }

    pub fn shifted(&self, i: usize, by: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += by;
        Nu(v)
    }

    /// nu + (-d, w_1, ..., w_N), the v-multiplication shift.
    pub fn v_shifted(&self, model: &crate::state::Model) -> Self {
        let mut v = self.0.clone();
        v[0] -= model.d() as i64;
        for j in 0..model.ws.n() {
            v[j + 1] += model.ws.weights()[j] as i64;
        }
        Nu(v)
    }
}

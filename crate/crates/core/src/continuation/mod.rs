//! Analytic continuation: the closed-form Mellin-Barnes transformations and
//! their non-equivariant limits, exact comparison with the Orlov images, and
//! numeric transport of Picard-Fuchs solutions along window paths.

mod transport;
mod umatrix;

pub use transport::{
    null_path, ode_transport, verify_mb, JetMatrix, MbSample, PathSpec, TransportResult,
};
pub use umatrix::{
    conifold_consistency, tensor_matrix_ambient, u_matrix, u_tw_entry_tau, u_tw_limit,
    u_tw_numeric, verify_noneq_limit, verify_orlov, window_recursion_holds, TauSeries, UMatrix,
    UTwNumeric,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branes::{ch_bases, autoeq_matrix, Autoeq};
    use crate::cyclotomic::Cyclotomic;
    use crate::geometry::{catalog, WeightSystem};
    use crate::rational::{rat, rat_int};
    use crate::state::Model;

    fn quintic() -> Model {
        Model::new(WeightSystem::new(&[1, 1, 1, 1, 1]).unwrap())
    }

    #[test]
    fn u_matrix_constant_term() {
        // U_0(phi_0) has constant term 1/(5 (zeta_5 - 1)) on the quintic.
        let m = quintic();
        let u = u_matrix(&m, 0).unwrap();
        let (k, col) = &u.columns[0];
        assert_eq!(*k, 1);
        let c = col.sector(0).unwrap().coeff(0);
        let expect = Cyclotomic::root_of_unity(5, 1)
            .sub(&Cyclotomic::one(5))
            .scale(&rat_int(5))
            .inv()
            .unwrap();
        assert_eq!(c.value(), &expect);
        assert_eq!(c.twopi_power(), 0);
    }

    #[test]
    fn u_matrices_invertible_in_window_range() {
        let m = quintic();
        for l in -2..=2 {
            let u = u_matrix(&m, l).unwrap().to_cycmat(&m).unwrap();
            assert!(u.inverse().is_ok(), "U_{l} invertible");
        }
    }

    #[test]
    fn broad_column_of_the_limit() {
        // quintic k = 5, l = 0: -p^4 1_0 (1/5) (2 pi i)^{-5}
        let m = quintic();
        let u = u_tw_limit(&m, 0).unwrap();
        let (k, col) = u.columns.last().unwrap();
        assert_eq!(*k, 5);
        let poly = col.sector(0).unwrap();
        let top = poly.coeff(4);
        assert_eq!(top.twopi_power(), -5);
        assert_eq!(top.value().rational_value().unwrap(), rat(-1, 5));
        for i in 0..4 {
            assert!(poly.coeff(i).is_zero());
        }
    }

    #[test]
    fn narrow_limit_columns_match_u_matrix() {
        // pr(u_tw_limit) = u_matrix on narrow columns: identical sector
        // polynomials after truncating to the ambient dimension.
        for ws in catalog() {
            let m = Model::new(ws);
            for l in [0i64, 1] {
                let full = u_tw_limit(&m, l).unwrap();
                let narrow = u_matrix(&m, l).unwrap();
                for (k, col) in &narrow.columns {
                    let (_, crp_col) = full
                        .columns
                        .iter()
                        .find(|(kk, _)| kk == k)
                        .expect("narrow key in the full matrix");
                    for (fd, amb_poly) in col.iter() {
                        let crp_poly = crp_col.sector(*fd).unwrap();
                        for i in 0..=amb_poly.trunc() {
                            assert_eq!(amb_poly.coeff(i), crp_poly.coeff(i), "{} l={l} k={k} fd={fd} i={i}", m.ws);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn noneq_limit_symbolic_expansion() {
        for ws in catalog().into_iter().take(2) {
            let m = Model::new(ws);
            for l in [0i64, 1] {
                assert!(verify_noneq_limit(&m, l).unwrap(), "{} l={l}", m.ws);
            }
        }
    }

    #[test]
    fn orlov_identity_exact() {
        let m = quintic();
        for q in 0..10 {
            for l in -2..=2 {
                assert!(verify_orlov(&m, q, l).unwrap(), "q={q} l={l}");
            }
        }
        let s = Model::new(WeightSystem::new(&[1, 1, 1, 1, 2]).unwrap());
        for q in 0..12 {
            for l in -2..=2 {
                assert!(verify_orlov(&s, q, l).unwrap(), "sextic q={q} l={l}");
            }
        }
    }

    #[test]
    fn conifold_and_window_recursion() {
        for ws in catalog().into_iter().take(2) {
            let m = Model::new(ws);
            assert!(conifold_consistency(&m).unwrap(), "{}", m.ws);
            for l in [0i64, 1] {
                assert!(window_recursion_holds(&m, l).unwrap(), "{} l={l}", m.ws);
            }
            // negative control: U_0 U_2^{-1} is not the spherical twist
            let u0 = u_matrix(&m, 0).unwrap().to_cycmat(&m).unwrap();
            let u2 = u_matrix(&m, 2).unwrap().to_cycmat(&m).unwrap();
            let bases = ch_bases(&m).unwrap();
            let t = autoeq_matrix(&m, &bases, Autoeq::SphericalTwist).unwrap();
            let rhs = bases.cy_mat.mul(&t).mul(&bases.cy_inv);
            assert_ne!(u0.mul(&u2.inverse().unwrap()), rhs, "{}", m.ws);
        }
    }

    #[test]
    fn tensor_matrix_consistent_with_basis_route() {
        // Two routes to the tensor-by-O(1) action: block-diagonal sector
        // multiplication vs conjugation of the basis matrix.
        for ws in catalog() {
            let m = Model::new(ws);
            let bases = ch_bases(&m).unwrap();
            let a = tensor_matrix_ambient(&m);
            let b = autoeq_matrix(&m, &bases, Autoeq::TensorO(1)).unwrap();
            let conj = bases.cy_mat.mul(&b).mul(&bases.cy_inv);
            assert_eq!(a, conj, "{}", m.ws);
        }
    }
}

//! Exact linear algebra over a [`Field`](crate::field::Field): canonical
//! subspaces, maps and forms, plus the gadgets attached to two-row Jordan
//! types (x_λ, M^λ, projections, quotients and the Q isomorphisms).

mod gadgets;
pub mod matrix;
mod qmap;
mod quotient;
mod subspace;

use thiserror::Error;

use crate::diagram::TwoRowPartition;

pub use gadgets::{
    build_form, build_nilpotent, e_index, e_vec, embedding_p, f_index, f_vec, j_block,
    projection_p, standard_span,
};
pub use matrix::Matrix;
pub use qmap::{ray_twist, QCase, QuadraticIso};
pub use quotient::QuotientSpace;
pub use subspace::{BilinearForm, LinearMap, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("partition {0} is not type-D admissible")]
    InadmissiblePartition(TwoRowPartition),
    #[error("cannot project {lambda} onto {mu}")]
    ShapeMismatch { lambda: TwoRowPartition, mu: TwoRowPartition },
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("subspace or its complement is not stable under the nilpotent")]
    NotStable,
    #[error("inconsistent data for Q map of case {0}")]
    InconsistentQData(QCase),
    #[error("vector outside W^⊥")]
    OutsideDomain,
}

#[cfg(test)]
mod tests {
    use super::matrix::{add, scale};
    use super::*;
    use crate::field::{GaussianField, Scalar};
    use proptest::prelude::*;

    fn lam(a: usize, b: usize) -> TwoRowPartition {
        TwoRowPartition::from_parts(a, b).unwrap()
    }

    fn all_q_maps(c: Scalar, d: Scalar) -> Vec<QuadraticIso<Scalar>> {
        let mut out = Vec::new();
        for n in (2..=12).step_by(2) {
            for k in 1..=n / 2 {
                let l = TwoRowPartition::new(n, k).unwrap();
                if !l.is_type_d() {
                    continue;
                }
                for t in 1..=k {
                    if let Ok(q) = QuadraticIso::case_i(l, t) {
                        out.push(q);
                    }
                }
                for chart in [1, 2] {
                    for swap in [false, true] {
                        if l.first() % 2 == 0 {
                            if let Ok(q) = QuadraticIso::case_ii(l, chart, c.clone(), d.clone(), swap) {
                                out.push(q);
                            }
                        }
                    }
                }
                for s in 1..=4 {
                    if let Ok(q) = QuadraticIso::case_iii(l, s) {
                        out.push(q);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn every_case_is_an_isometry_intertwining_x() {
        let maps = all_q_maps(Scalar::integer(2), Scalar::from(-3));
        for case in [QCase::I, QCase::II1, QCase::II2, QCase::III1, QCase::III2, QCase::III3, QCase::III4] {
            assert!(maps.iter().any(|q| q.case() == case), "no instance of {case}");
        }
        for q in &maps {
            assert!(q.preserves_form(), "{} on {}", q.case(), q.lambda());
            assert!(q.intertwines(), "{} on {}", q.case(), q.lambda());
        }
    }

    #[test]
    fn q_i_t_odd_uses_i() {
        let q = QuadraticIso::<Scalar>::case_i(lam(4, 4), 1).unwrap();
        let l = lam(4, 4);
        let nu = lam(2, 2);
        assert_eq!(q.apply(&e_vec(l, 2)).unwrap(), scale(&e_vec::<Scalar>(nu, 1), &Scalar::i()));
    }

    #[test]
    fn q_iii_3_on_53() {
        let l = lam(5, 3);
        let nu = lam(3, 3);
        let q = QuadraticIso::<Scalar>::case_iii(l, 3).unwrap();
        let s = Scalar::sqrt_minus_half();
        for i in 1..=3 {
            let plus = add(&e_vec::<Scalar>(l, i + 1), &f_vec(l, i));
            let minus = add(&e_vec::<Scalar>(l, i + 1), &scale(&f_vec(l, i), &Scalar::from(-1)));
            assert_eq!(scale(&q.apply(&plus).unwrap(), &s), f_vec::<Scalar>(nu, i));
            assert_eq!(scale(&q.apply(&minus).unwrap(), &s), e_vec::<Scalar>(nu, i));
        }
    }

    #[test]
    fn q_ii_1_on_44() {
        let l = lam(4, 4);
        let nu = lam(3, 3);
        let q = QuadraticIso::<Scalar>::case_ii(l, 1, Scalar::one(), Scalar::one(), false).unwrap();
        let i = Scalar::imag_unit();
        for k in 1..=3 {
            let v = add(&e_vec::<Scalar>(l, k + 1), &f_vec(l, k + 1));
            assert_eq!(scale(&q.apply(&v).unwrap(), &i), e_vec::<Scalar>(nu, k));
            assert_eq!(scale(&q.apply(&f_vec(l, k)).unwrap(), &i), f_vec::<Scalar>(nu, k));
        }
    }

    #[test]
    fn odd_m_case_ii_obstruction() {
        let r = QuadraticIso::<Scalar>::case_ii(lam(3, 3), 1, Scalar::one(), Scalar::one(), false);
        assert_eq!(r.unwrap_err(), LinalgError::InconsistentQData(QCase::II1));
    }

    #[test]
    fn perp_of_case_ii_line() {
        // W = ⟨c e1 + d f1⟩ in (m,m): W^⊥ is spanned by e_1..e_{m−1}, f_1..f_{m−1}
        // and c e_m + d f_m (up to the sign pattern of J_m).
        let l = lam(4, 4);
        let beta = build_form::<Scalar>(l).unwrap();
        let (c, d) = (Scalar::from(2), Scalar::from(5));
        let w = Subspace::span(8, [add(&scale(&e_vec(l, 1), &c), &scale(&f_vec(l, 1), &d))]);
        let wp = beta.perp(&w);
        assert_eq!(wp.dim(), 7);
        for i in 1..4 {
            assert!(wp.contains_vector(&e_vec(l, i)) && wp.contains_vector(&f_vec(l, i)));
        }
        assert!(wp.contains_vector(&add(&scale(&e_vec(l, 4), &c), &scale(&f_vec(l, 4), &d))));
    }

    #[test]
    fn forward_pull_back_round_trip() {
        for q in all_q_maps(Scalar::from(1), Scalar::from(4)) {
            let nu = q.nu();
            let u = standard_span::<Scalar>(nu, 1, nu.second().min(2));
            let back = q.pull_back(&u);
            assert_eq!(q.forward(&back).unwrap(), u, "{}", q.case());
        }
    }

    proptest! {
        #[test]
        fn random_case_ii_data(c in -5i64..=5, d in -5i64..=5, swap: bool) {
            prop_assume!(c != 0 || d != 0);
            for m in [2usize, 4, 6] {
                for chart in [1u8, 2] {
                    if let Ok(q) = QuadraticIso::<Scalar>::case_ii(lam(m, m), chart, Scalar::from(c), Scalar::from(d), swap) {
                        prop_assert!(q.preserves_form());
                        prop_assert!(q.intertwines());
                    }
                }
            }
        }

        #[test]
        fn spans_ignore_scaling(c in 1i64..=5) {
            let q = QuadraticIso::<Scalar>::case_iii(lam(7, 3), 4).unwrap();
            let scaled = QuadraticIso::new(
                q.case(), q.lambda(), q.nu(), q.w().clone(),
                q.representatives().to_vec(),
                q.images().iter().map(|v| scale(v, &Scalar::from(c))).collect(),
                q.factor().clone(),
            ).unwrap();
            let u = standard_span::<Scalar>(q.lambda(), 3, 1);
            prop_assert_eq!(q.forward(&u).unwrap(), scaled.forward(&u).unwrap());
        }
    }

    use num_traits::One;
}

//! Property tests for the closed-form branches against the dense oracles and
//! the structural symmetries of axially symmetric states.

use std::f64::consts::TAU;

use axial_qq::closed_form::{correlations_with_spectrum, lqfi_branches, lqu_branches, wm_diagonal_raw};
use axial_qq::oracle::{lqfi_oracle, lqu_oracle, m_matrix, w_matrix};
use axial_qq::{correlations, ASDensityMatrix, ASSpectrum, Complex64};
use proptest::prelude::*;

/// Valid AS states, including exact zeros on the diagonal and coherences on
/// the positivity boundary.
fn as_state() -> impl Strategy<Value = ASDensityMatrix> {
    let weight = prop_oneof![1 => Just(0.0), 9 => 0.0..1.0f64];
    let radius = prop_oneof![1 => Just(0.0), 1 => Just(1.0), 8 => 0.0..1.0f64];
    (
        prop::array::uniform6(weight),
        radius.clone(),
        0.0..TAU,
        radius,
        0.0..TAU,
    )
        .prop_filter("needs some weight", |(w, ..)| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|(w, ru, tu, rv, tv)| {
            let total: f64 = w.iter().sum();
            let [p1, a, b, c, d, p6] = w.map(|x| x / total);
            ASDensityMatrix {
                p1,
                a,
                b,
                c,
                d,
                p6,
                u: Complex64::from_polar(ru * (a * c).sqrt(), tu),
                v: Complex64::from_polar(rv * (b * d).sqrt(), tv),
            }
        })
}

/// Interior states: strictly positive spectrum, away from the boundary where
/// square roots of rounding noise dominate.
fn interior_state() -> impl Strategy<Value = ASDensityMatrix> {
    (prop::array::uniform6(0.02..1.0f64), 0.0..0.95f64, 0.0..TAU, 0.0..0.95f64, 0.0..TAU).prop_map(
        |(w, ru, tu, rv, tv)| {
            let total: f64 = w.iter().sum();
            let [p1, a, b, c, d, p6] = w.map(|x| x / total);
            ASDensityMatrix {
                p1,
                a,
                b,
                c,
                d,
                p6,
                u: Complex64::from_polar(ru * (a * c).sqrt(), tu),
                v: Complex64::from_polar(rv * (b * d).sqrt(), tv),
            }
        },
    )
}

fn swapped(s: &ASSpectrum) -> ASSpectrum {
    ASSpectrum {
        p2: s.p3,
        p3: s.p2,
        p4: s.p5,
        p5: s.p4,
        ..*s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closed_form_matches_oracle(m in interior_state()) {
        let c = correlations(&m).unwrap();
        let rho = m.to_dense();
        prop_assert!((c.u - lqu_oracle(&rho).unwrap()).abs() <= 1e-8);
        prop_assert!((c.f - lqfi_oracle(&rho).unwrap()).abs() <= 1e-8);
    }

    #[test]
    fn fisher_matches_oracle_up_to_the_boundary(m in as_state()) {
        // LQFI has no square roots, so agreement holds on rank-deficient states too
        let c = correlations(&m).unwrap();
        prop_assert!((c.f - lqfi_oracle(&m.to_dense()).unwrap()).abs() <= 1e-8, "{:?}", c);
    }

    #[test]
    fn raw_forms_match_compact_forms(m in interior_state()) {
        let s = m.spectrum().unwrap();
        let (u0, u1) = lqu_branches(&m, &s).unwrap();
        let (f0, f1) = lqfi_branches(&m, &s).unwrap();
        let raw = wm_diagonal_raw(&m, &s);
        prop_assert!((1.0 - raw.wzz - u0).abs() <= 1e-10);
        prop_assert!((1.0 - raw.wxx - u1).abs() <= 1e-10);
        prop_assert!((1.0 - raw.mzz - f0).abs() <= 1e-10);
        prop_assert!((1.0 - raw.mxx - f1).abs() <= 1e-10);
    }

    #[test]
    fn block_order_does_not_matter(m in as_state()) {
        let s = m.spectrum().unwrap();
        let (u0, u1) = lqu_branches(&m, &s).unwrap();
        let (f0, _) = lqfi_branches(&m, &s).unwrap();
        let t = swapped(&s);
        let (v0, v1) = lqu_branches(&m, &t).unwrap();
        let (g0, _) = lqfi_branches(&m, &t).unwrap();
        prop_assert!((u0 - v0).abs() <= 1e-12);
        prop_assert!((u1 - v1).abs() <= 1e-12);
        prop_assert!((f0 - g0).abs() <= 1e-12);
    }

    #[test]
    fn coherence_phases_are_irrelevant(m in interior_state(), a in 0.0..TAU, b in 0.0..TAU) {
        let c = correlations(&m).unwrap();
        let d = correlations(&m.with_phases(a, b)).unwrap();
        for (x, y) in [(c.u0, d.u0), (c.u1, d.u1), (c.f0, d.f0), (c.f1, d.f1)] {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn fisher_phase_invariance_up_to_the_boundary(m in as_state(), a in 0.0..TAU, b in 0.0..TAU) {
        // on rank-deficient states |u|² moves by an ulp under rotation and the
        // LQU branches see it through √p3; the Fisher branches do not
        let c = correlations(&m).unwrap();
        let d = correlations(&m.with_phases(a, b)).unwrap();
        prop_assert!((c.f0 - d.f0).abs() <= 1e-12);
        prop_assert!((c.f1 - d.f1).abs() <= 1e-12);
    }

    #[test]
    fn values_stay_in_unit_interval(m in as_state()) {
        let c = correlations(&m).unwrap();
        for x in [c.u0, c.u1, c.f0, c.f1] {
            prop_assert!(x >= -1e-10 && x <= 1.0 + 1e-10, "{:?}", c);
        }
        prop_assert_eq!(c.u, c.u0.min(c.u1));
        prop_assert_eq!(c.f, c.f0.min(c.f1));
    }

    #[test]
    fn classical_states_are_uncorrelated(m in as_state()) {
        let m = ASDensityMatrix { u: Complex64::new(0.0, 0.0), v: Complex64::new(0.0, 0.0), ..m };
        let c = correlations(&m).unwrap();
        prop_assert!(c.u.abs() <= 1e-12 && c.f.abs() <= 1e-12, "{:?}", c);
    }

    #[test]
    fn oracle_matrices_are_diagonal(m in as_state()) {
        let rho = m.to_dense();
        for s in [w_matrix(&rho).unwrap(), m_matrix(&rho).unwrap()] {
            prop_assert!(s.max_offdiag() <= 1e-12);
            prop_assert!((s.0[(0, 0)] - s.0[(1, 1)]).abs() <= 1e-12);
        }
    }

    #[test]
    fn analytic_spectrum_matches_dense(m in as_state()) {
        let s = m.spectrum().unwrap();
        let (dense, _) = axial_qq::oracle::eig_hermitian(&m.to_dense()).unwrap();
        let mut analytic = s.eigenvalues();
        analytic.sort_by(f64::total_cmp);
        for (x, y) in dense.iter().zip(analytic) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn spectrum_argument_is_what_is_used(m in interior_state()) {
        let s = m.spectrum().unwrap();
        prop_assert_eq!(correlations(&m).unwrap(), correlations_with_spectrum(&m, &s).unwrap());
    }
}

use clamped_plate_core::exact_algebra::{rat, RatFunQ};
use clamped_plate_core::series_verify::{
    base_matrix, exact_coeff, reduce_to_basis, series_i, series_j, series_w, verify_base_matrix,
    verify_lemma_formulas, verify_lemma_formulas_using, verify_recursion_series,
    verify_recursion_symbolic, CheckStatus, NegativeOrder,
};
use clamped_plate_core::BesselKind;
use proptest::prelude::*;

#[test]
fn lemma_suite() {
    for m in 1..=10 {
        let r = verify_lemma_formulas(m, 60, NegativeOrder::Convention).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.checks.len(), 6);
    }
    let r = verify_lemma_formulas(0, 60, NegativeOrder::Convention).unwrap();
    assert!(r.checks.iter().all(|c| c.status == CheckStatus::Pass));
    assert!(r.note.is_some());
}

#[test]
fn recursion_both_tracks() {
    for m in 0..=10 {
        assert!(verify_recursion_symbolic(m).pass);
        assert!(verify_recursion_series(m, 80).unwrap().pass);
        assert!(verify_recursion_series(m, 60.max(2 * m + 12)).unwrap().pass);
    }
}

#[test]
fn base_matrix_and_determinant() {
    let r = verify_base_matrix();
    assert!(r.pass, "{r}");
    let det = base_matrix().det().unwrap();
    assert_eq!(det, RatFunQ::monomial(rat(64, 1), -2));
    assert_eq!(reduce_to_basis(2).to_string(), "(0, -1, 1, -4/z)");
}

#[test]
fn normalization_coefficient() {
    for m in 0..8u32 {
        let fact: i64 = (1..=m as i64).product();
        let want = rat(1, 2i64.pow(m) * fact);
        assert_eq!(series_j(m, m + 1).coeff(m as i64), want);
        assert_eq!(series_i(m, m + 1).coeff(m as i64), want);
    }
}

#[test]
fn report_serializes_deterministically() {
    let a = serde_json::to_string(&verify_recursion_symbolic(3)).unwrap();
    let b = serde_json::to_string(&verify_recursion_symbolic(3)).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"pass\":true"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn any_single_perturbation_is_caught(m in 1u32..6, k in 0u32..4, i_side in any::<bool>()) {
        let kind = if i_side { BesselKind::I } else { BesselKind::J };
        let bad = move |kd: BesselKind, mm: u32, kk: u32| {
            let c = exact_coeff(kd, mm, kk);
            if kd == kind && mm == m && kk == k { c * rat(3, 2) } else { c }
        };
        let r = verify_lemma_formulas_using(m, 2 * m + 20, NegativeOrder::Convention, &bad).unwrap();
        prop_assert!(!r.pass);
    }

    #[test]
    fn w_series_starts_at_odd_power(m in 0u32..8) {
        let w = series_w(m, 2 * m + 10);
        prop_assert_eq!(w.valuation(), 2 * m as i64 + 1);
        prop_assert!(w.terms().all(|(e, _)| e % 2 == 1));
    }
}

mod common;

use clamped_plate_core::bessel_eval::{
    bessel_derivs, bessel_i, bessel_j, cross_w, cross_w_definition, cross_w_deriv, ode_residual,
    recursion_residual,
};
use clamped_plate_core::exact_algebra::{parse_rat, Rat};
use clamped_plate_core::{BesselKind, ErrFloat, EvalConfig};
use common::{partial_sum, pow10_inv, r, w_oracle};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn encloses(ball: &ErrFloat, lo: &Rat, hi: &Rat) -> bool {
    // the true value lies in both; they must intersect
    ball.lower() <= *hi && *lo <= ball.upper()
}

#[test]
fn values_against_partial_sums() {
    for (m, x) in [(0, r(1, 1)), (1, r(7, 2)), (3, r(25, 3)), (10, r(40, 1))] {
        let (j, ej) = partial_sum(m, &x, true, 160);
        let (i, ei) = partial_sum(m, &x, false, 160);
        let bj = bessel_j(m, &x, &cfg()).unwrap();
        let bi = bessel_i(m, &x, &cfg()).unwrap();
        assert!(encloses(&bj, &(&j - &ej), &(&j + &ej)), "J_{m}({x})");
        assert!(encloses(&bi, &(&i - &ei), &(&i + &ei)), "I_{m}({x})");
        assert!(bj.err_at_most(&pow10_inv(30)));
    }
}

#[test]
fn w0_at_one() {
    let w = cross_w(0, &r(1, 1), &cfg()).unwrap();
    let (lo, hi) = w_oracle(0, &r(1, 1), 60);
    assert!(encloses(&w, &lo, &hi));
    let want = parse_rat("0.9895914700086674392393438280302888569202").unwrap();
    assert!((w.value() - want).abs() < pow10_inv(35));
}

#[test]
fn small_argument_limit() {
    // W_m(x) / x^(2m+1) -> 1/((m+1) 4^m (m!)^2)
    let x = r(1, 1000);
    for m in 0..6u32 {
        let w = cross_w(m, &x, &cfg().with_target(pow10_inv(80)).unwrap()).unwrap();
        let fact: i64 = (1..=m as i64).product();
        let limit = r(1, (m as i64 + 1) * 4i64.pow(m) * fact * fact);
        let ratio = w.value() / num_traits::pow(x.clone(), 2 * m as usize + 1);
        let rel = ((ratio - &limit) / &limit).abs();
        assert!(rel < r(1, 10_000), "m = {m}");
    }
}

#[test]
fn definition_matches_product_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let m = rng.gen_range(0..=10);
        let x = r(rng.gen_range(5..=4000), 100);
        let a = cross_w(m, &x, &cfg()).unwrap();
        let b = cross_w_definition(m, &x, &cfg()).unwrap();
        assert!(a.overlaps(&b), "m = {m}, x = {x}");
    }
}

#[test]
fn both_derivative_rules_agree() {
    // J_m' = (m/x) J_m - J_{m+1} = J_{m-1} - (m/x) J_m, likewise for I
    let x = r(1, 1);
    for m in 1..=8u32 {
        let (dj, di) = bessel_derivs(m, &x, &cfg()).unwrap();
        let jm = bessel_j(m, &x, &cfg()).unwrap();
        let jl = bessel_j(m - 1, &x, &cfg()).unwrap();
        let im = bessel_i(m, &x, &cfg()).unwrap();
        let il = bessel_i(m - 1, &x, &cfg()).unwrap();
        let mx = r(m as i64, 1);
        let dj2 = jl.sub(&jm.mul_rat(&mx));
        let di2 = il.sub(&im.mul_rat(&mx));
        assert!(dj.sub(&dj2).contains_zero(), "J rule at m = {m}");
        assert!(di.sub(&di2).contains_zero(), "I rule at m = {m}");
    }
}

#[test]
fn derivative_by_finite_difference() {
    let h = r(1, 1_000_000);
    for (m, x) in [(0, r(7, 10)), (2, r(23, 10)), (5, r(11, 2))] {
        let d = cross_w_deriv(m, &x, &cfg()).unwrap();
        let up = cross_w(m, &(&x + &h), &cfg()).unwrap();
        let down = cross_w(m, &(&x - &h), &cfg()).unwrap();
        let fd = (up.value() - down.value()) / (&h * r(2, 1));
        assert!((fd - d.value()).abs() < r(1, 100_000_000), "m = {m}");
    }
}

#[test]
fn modified_functions_positive() {
    for m in 0..=12 {
        for x in [r(1, 100), r(1, 1), r(19, 2), r(50, 1)] {
            assert!(bessel_i(m, &x, &cfg()).unwrap().is_positive());
        }
    }
}

#[test]
fn residuals_contain_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tight = cfg().with_target(pow10_inv(25)).unwrap();
    for _ in 0..60 {
        let m = rng.gen_range(0..=10);
        let x = r(rng.gen_range(51..=4000), 100);
        let rr = recursion_residual(m, &x, &tight).unwrap();
        assert!(rr.contains_zero() && rr.err_at_most(&pow10_inv(25)));
        for kind in [BesselKind::J, BesselKind::I] {
            let o = ode_residual(kind, m, &x, &tight.with_scaled(true)).unwrap();
            assert!(o.contains_zero() && o.err_at_most(&pow10_inv(25)));
        }
    }
}

#[test]
fn perturbed_recursion_detected() {
    // W_2 + W_4 alone is far from zero; the residual is not trivially small
    let x = r(3, 1);
    let w2 = cross_w(2, &x, &cfg()).unwrap();
    let w4 = cross_w(4, &x, &cfg()).unwrap();
    assert!(!w2.add(&w4).contains_zero());
}

#[test]
fn scaled_matches_unscaled_sign() {
    for m in 0..4 {
        for x in [r(3, 1), r(13, 1), r(33, 1)] {
            let a = cross_w(m, &x, &cfg()).unwrap();
            let b = cross_w(m, &x, &cfg().with_scaled(true)).unwrap();
            assert_eq!(a.sign(), b.sign());
        }
    }
}

#[test]
fn tighter_targets_stay_consistent() {
    let x = r(173, 10);
    let loose = cross_w(3, &x, &cfg().with_target(pow10_inv(10)).unwrap()).unwrap();
    let tight = cross_w(3, &x, &cfg().with_target(pow10_inv(40)).unwrap()).unwrap();
    assert!(loose.overlaps(&tight));
    assert!(tight.err() <= loose.err());
}

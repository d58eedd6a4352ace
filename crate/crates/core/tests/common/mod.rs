//! Independent oracles: exact rational partial sums with explicit tail
//! bounds, no shared code with the library's evaluator.

#![allow(dead_code)]

use clamped_plate_core::exact_algebra::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn r(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `sum_k s^k (x/2)^(2k+m) / (k! (m+k)!)` and a bound on the tail.
/// `s = -1` gives `J_m`, `s = 1` gives `I_m`.
pub fn partial_sum(m: u32, x: &Rat, alternating: bool, terms: u32) -> (Rat, Rat) {
    let y = x * x / r(4, 1);
    let mut term = num_traits::pow(x / r(2, 1), m as usize);
    for k in 1..=m {
        term /= r(k as i64, 1);
    }
    let mut sum = Rat::zero();
    for k in 0..terms {
        if alternating && k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        term = term * &y / r(((k + 1) * (m + k + 1)) as i64, 1);
    }
    // once the ratio y/((k+1)(m+k+1)) <= 1/2 the tail is at most twice the next term
    let ratio = &y / r((terms * (m + terms)) as i64, 1);
    assert!(ratio <= r(1, 2), "too few terms for this argument");
    (sum, term * r(2, 1))
}

/// `[lo, hi]` enclosure of `W_m(x) = I_{m+1} J_m + I_m J_{m+1}`.
pub fn w_oracle(m: u32, x: &Rat, terms: u32) -> (Rat, Rat) {
    let (j0, ej0) = partial_sum(m, x, true, terms);
    let (j1, ej1) = partial_sum(m + 1, x, true, terms);
    let (i0, ei0) = partial_sum(m, x, false, terms);
    let (i1, ei1) = partial_sum(m + 1, x, false, terms);
    let v = &i1 * &j0 + &i0 * &j1;
    // |ab - AB| <= |a| eB + |B| ea + ea eB with |B| <= |b| + eB
    let prod_err = |a: &Rat, ea: &Rat, b: &Rat, eb: &Rat| a.abs() * eb + (b.abs() + eb) * ea;
    let e = prod_err(&i1, &ei1, &j0, &ej0) + prod_err(&i0, &ei0, &j1, &ej1);
    (&v - &e, &v + &e)
}

pub fn j_oracle(m: u32, x: &Rat, terms: u32) -> (Rat, Rat) {
    let (v, e) = partial_sum(m, x, true, terms);
    (&v - &e, &v + &e)
}

/// Bisects a sign change of `f` in `[lo, hi]` down to `width`.
pub fn bisect(f: impl Fn(&Rat) -> (Rat, Rat), mut lo: Rat, mut hi: Rat, width: &Rat) -> (Rat, Rat) {
    let sign = |x: &Rat| {
        let (a, b) = f(x);
        if a.is_positive() {
            1
        } else if b.is_negative() {
            -1
        } else {
            panic!("oracle sign undecided at {x}")
        }
    };
    let s_lo = sign(&lo);
    assert_ne!(s_lo, sign(&hi));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / r(2, 1);
        if sign(&mid) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

pub fn pow10_inv(k: u32) -> Rat {
    Rat::new(BigInt::one(), num_traits::pow(BigInt::from(10), k as usize))
}

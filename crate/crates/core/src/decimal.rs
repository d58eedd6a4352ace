//! Deterministic decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact_algebra::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    HalfEven,
    Floor,
    Ceil,
}

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

fn round_scaled(r: &Rat, digits: usize, mode: Rounding) -> BigInt {
    let scaled = r * Rat::from_integer(pow10(digits));
    let (q, rem) = scaled.numer().div_mod_floor(scaled.denom());
    if rem.is_zero() {
        return q;
    }
    match mode {
        Rounding::Floor => q,
        Rounding::Ceil => q + 1,
        Rounding::HalfEven => {
            let twice: BigInt = &rem * 2;
            match twice.cmp(scaled.denom()) {
                std::cmp::Ordering::Less => q,
                std::cmp::Ordering::Greater => q + 1,
                std::cmp::Ordering::Equal => {
                    if q.is_even() {
                        q
                    } else {
                        q + 1
                    }
                }
            }
        }
    }
}

/// Fixed-point rendering with exactly `digits` places after the point.
pub fn render_decimal(r: &Rat, digits: usize, mode: Rounding) -> String {
    let n = round_scaled(r, digits, mode);
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int_part, frac_part) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Scientific rendering of a nonnegative bound with `sig` significant digits,
/// rounded up so the printed number is never smaller than the bound.
pub fn render_sci_up(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let r = r.abs();
    // find e with 10^e <= r < 10^(e+1)
    let mut e: i64 = (r.numer().bits() as i64 - r.denom().bits() as i64) * 30103 / 100000;
    let ten = Rat::from_integer(BigInt::from(10));
    let p = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(pow10(k as usize))
        } else {
            Rat::new(BigInt::from(1), pow10((-k) as usize))
        }
    };
    while p(e) > r {
        e -= 1;
    }
    while p(e) * &ten <= r {
        e += 1;
    }
    let mant = &r / p(e);
    let mut text = render_decimal(&mant, sig.saturating_sub(1), Rounding::Ceil);
    if text.starts_with("10") {
        e += 1;
        text = render_decimal(&(mant / ten), sig.saturating_sub(1), Rounding::Ceil);
    }
    format!("{text}e{e}")
}

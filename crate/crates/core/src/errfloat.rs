//! Fixed-point ball arithmetic.
//!
//! An [`ErrFloat`] stores a midpoint and a radius as integers in units of
//! `2^-frac`. The represented real lies in `[mid - rad, mid + rad]`. Every
//! operation rounds the midpoint and widens the radius so the enclosure
//! stays valid; there is no floating-point anywhere in the error path.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::decimal::{render_decimal, Rounding};
use crate::exact_algebra::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrFloat {
    mid: BigInt,
    rad: BigInt,
    frac: u32,
    prec_bits: u32,
}

fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    // `>>` on BigInt rounds toward negative infinity
    x >> k
}

fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> k)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

impl ErrFloat {
    pub fn exact_zero(frac: u32) -> Self {
        Self::from_parts(BigInt::zero(), BigInt::zero(), frac)
    }

    pub fn from_integer(n: impl Into<BigInt>, frac: u32) -> Self {
        Self::from_parts(n.into() << frac, BigInt::zero(), frac)
    }

    pub(crate) fn from_parts(mid: BigInt, rad: BigInt, frac: u32) -> Self {
        debug_assert!(!rad.is_negative());
        ErrFloat {
            mid,
            rad,
            frac,
            prec_bits: frac,
        }
    }

    /// Encloses an exact rational; the radius is zero iff the value is dyadic
    /// at this resolution.
    pub fn from_rat(r: &Rat, frac: u32) -> Self {
        let scaled = r.numer() << frac;
        let (q, rem) = scaled.div_mod_floor(r.denom());
        let rad = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
        Self::from_parts(q, rad, frac)
    }

    /// Ball covering the closed rational interval `[lo, hi]`.
    pub fn from_interval(lo: &Rat, hi: &Rat, frac: u32) -> Self {
        debug_assert!(lo <= hi);
        let l = (lo.numer() << frac).div_floor(lo.denom());
        let h = div_ceil(&(hi.numer() << frac), hi.denom());
        Self::from_bounds(l, h, frac)
    }

    fn from_bounds(lo: BigInt, hi: BigInt, frac: u32) -> Self {
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let rad = (&hi - &mid).max(&mid - &lo);
        Self::from_parts(mid, rad, frac)
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac
    }

    /// Precision the value was requested at (before internal guard bits).
    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    pub fn with_prec_bits(mut self, prec_bits: u32) -> Self {
        self.prec_bits = prec_bits;
        self
    }

    pub fn value(&self) -> Rat {
        Rat::new(self.mid.clone(), BigInt::one() << self.frac)
    }

    pub fn err(&self) -> Rat {
        Rat::new(self.rad.clone(), BigInt::one() << self.frac)
    }

    pub fn lower(&self) -> Rat {
        Rat::new(&self.mid - &self.rad, BigInt::one() << self.frac)
    }

    pub fn upper(&self) -> Rat {
        Rat::new(&self.mid + &self.rad, BigInt::one() << self.frac)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Certified sign, or `None` when the enclosure straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Some(Ordering::Equal);
        }
        if self.mid.abs() <= self.rad {
            return None;
        }
        Some(if self.mid.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(Ordering::Greater)
    }

    pub fn err_at_most(&self, bound: &Rat) -> bool {
        // rad / 2^frac <= p / q  <=>  rad * q <= p * 2^frac
        &self.rad * bound.denom() <= bound.numer() << self.frac
    }

    /// Whether `other`'s enclosure lies within this one.
    pub fn contains(&self, other: &ErrFloat) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &ErrFloat) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Upper bound on `|x|` in units of `2^-frac`.
    pub(crate) fn abs_upper_units(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    pub fn to_f64(&self) -> f64 {
        let v = self.value();
        let n: f64 = v.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = v.denom().to_string().parse().unwrap_or(f64::NAN);
        if n.is_finite() && d.is_finite() {
            n / d
        } else {
            let digits = render_decimal(&v, 20, Rounding::HalfEven);
            digits.parse().unwrap_or(f64::NAN)
        }
    }

    pub fn to_frac(&self, frac: u32) -> Self {
        let out = match frac.cmp(&self.frac) {
            Ordering::Equal => return self.clone(),
            Ordering::Greater => {
                let k = frac - self.frac;
                Self::from_parts(&self.mid << k, &self.rad << k, frac)
            }
            Ordering::Less => {
                let k = self.frac - frac;
                let mid = shr_floor(&self.mid, k);
                let dropped = &self.mid - (&mid << k);
                let mut rad = shr_ceil(&self.rad, k);
                if !dropped.is_zero() {
                    rad += 1;
                }
                Self::from_parts(mid, rad, frac)
            }
        };
        out.with_prec_bits(self.prec_bits)
    }

    fn aligned(&self, other: &ErrFloat) -> (ErrFloat, ErrFloat) {
        let f = self.frac.max(other.frac);
        (self.to_frac(f), other.to_frac(f))
    }

    pub fn add(&self, other: &ErrFloat) -> ErrFloat {
        let (a, b) = self.aligned(other);
        Self::from_parts(&a.mid + &b.mid, &a.rad + &b.rad, a.frac)
            .with_prec_bits(self.prec_bits.min(other.prec_bits))
    }

    pub fn sub(&self, other: &ErrFloat) -> ErrFloat {
        let (a, b) = self.aligned(other);
        Self::from_parts(&a.mid - &b.mid, &a.rad + &b.rad, a.frac)
            .with_prec_bits(self.prec_bits.min(other.prec_bits))
    }

    pub fn neg(&self) -> ErrFloat {
        ErrFloat {
            mid: -&self.mid,
            ..self.clone()
        }
    }

    /// Product, kept at the finer of the two resolutions.
    pub fn mul(&self, other: &ErrFloat) -> ErrFloat {
        let mid = &self.mid * &other.mid;
        let rad = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let drop = self.frac.min(other.frac);
        let frac = self.frac.max(other.frac);
        let m = shr_floor(&mid, drop);
        let mut r = shr_ceil(&rad, drop);
        if m.clone() << drop != mid {
            r += 1;
        }
        Self::from_parts(m, r, frac).with_prec_bits(self.prec_bits.min(other.prec_bits))
    }

    pub fn mul_int(&self, n: &BigInt) -> ErrFloat {
        ErrFloat {
            mid: &self.mid * n,
            rad: &self.rad * n.abs(),
            frac: self.frac,
            prec_bits: self.prec_bits,
        }
    }

    pub fn div_int(&self, d: &BigInt) -> ErrFloat {
        assert!(!d.is_zero(), "division by zero");
        let (mid, d) = if d.is_negative() {
            (-&self.mid, -d)
        } else {
            (self.mid.clone(), d.clone())
        };
        let (q, r) = mid.div_mod_floor(&d);
        let mut rad = div_ceil(&self.rad, &d);
        if !r.is_zero() {
            rad += 1;
        }
        ErrFloat {
            mid: q,
            rad,
            frac: self.frac,
            prec_bits: self.prec_bits,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> ErrFloat {
        self.mul_int(r.numer()).div_int(r.denom())
    }

    /// Reciprocal; `None` if the enclosure contains zero.
    pub fn recip(&self) -> Option<ErrFloat> {
        let negative = match self.sign()? {
            Ordering::Equal => return None,
            Ordering::Less => true,
            Ordering::Greater => false,
        };
        let m = self.mid.abs();
        let one = BigInt::one() << (2 * self.frac);
        // 1/[m - r, m + r] = [1/(m + r), 1/(m - r)]
        let lo = one.div_floor(&(&m + &self.rad));
        let hi = div_ceil(&one, &(&m - &self.rad));
        let out = Self::from_bounds(lo, hi, self.frac).with_prec_bits(self.prec_bits);
        Some(if negative { out.neg() } else { out })
    }

    pub fn div(&self, other: &ErrFloat) -> Option<ErrFloat> {
        Some(self.mul(&other.recip()?))
    }

    /// Adds `extra` (an exact nonnegative rational) to the radius.
    pub fn widen(&self, extra: &Rat) -> ErrFloat {
        debug_assert!(!extra.is_negative());
        let add = div_ceil(&(extra.numer() << self.frac), extra.denom());
        ErrFloat {
            rad: &self.rad + add,
            ..self.clone()
        }
    }

    pub(crate) fn widen_units(&self, extra: &BigInt) -> ErrFloat {
        ErrFloat {
            rad: &self.rad + extra,
            ..self.clone()
        }
    }

    pub fn abs_upper(&self) -> Rat {
        Rat::new(self.abs_upper_units(), BigInt::one() << self.frac)
    }

    /// Midpoint rendered with `digits` places after the decimal point.
    pub fn render_mid(&self, digits: usize) -> String {
        render_decimal(&self.value(), digits, Rounding::HalfEven)
    }

    /// Radius rendered in scientific form, rounded up.
    pub fn render_err(&self) -> String {
        crate::decimal::render_sci_up(&self.err(), 3)
    }
}

impl fmt::Display for ErrFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {}", self.render_mid(30), self.render_err())
    }
}

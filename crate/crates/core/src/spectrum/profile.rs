//! Radial part of a clamped-plate eigenfunction,
//! `u(r) = I_m(w) J_m(w r) - J_m(w) I_m(w r)`, scaled by `e^-w`.
//!
//! The scaling keeps the values of order one; it does not move any zero.
//! `u(1) = 0` holds identically, and `u'(1) = -w W_m(w)` is enclosed over
//! the whole zero enclosure, so it must contain zero.

use std::cmp::Ordering;

use serde::Serialize;

use super::{SpectrumError, ZeroKind, ZeroRecord};
use crate::bessel_eval::{Arg, EvalConfig, Evaluator};
use crate::decimal::render_sci_up;
use crate::errfloat::ErrFloat;
use crate::exact_algebra::{rat, render_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileSample {
    pub r: String,
    pub u: String,
    pub err: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialProfile {
    pub m: u32,
    pub k: u32,
    /// The exact point `w` used for sampling (midpoint of the enclosure).
    pub w: Rat,
    pub samples: Vec<(Rat, ErrFloat)>,
    /// Enclosure of `e^-w u'(1)` over the zero enclosure.
    pub du1: ErrFloat,
}

impl RadialProfile {
    /// Sign changes among samples with certified nonzero sign in `0 < r < 1`.
    pub fn interior_sign_changes(&self) -> usize {
        let signs: Vec<Ordering> = self
            .samples
            .iter()
            .filter(|(r, _)| r > &Rat::from_integer(0.into()) && r < &Rat::from_integer(1.into()))
            .filter_map(|(_, u)| u.sign().filter(|s| *s != Ordering::Equal))
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn u_at_one(&self) -> Option<&ErrFloat> {
        self.samples.last().map(|(_, u)| u)
    }

    pub fn du1_contains_zero(&self) -> bool {
        self.du1.contains_zero()
    }

    /// Whether the `u'(1)` radius is at most `w * tol`.
    pub fn du1_radius_within(&self, tol: &Rat) -> bool {
        self.du1.err_at_most(&(&self.w * tol))
    }

    pub fn sample_rows(&self, digits: usize) -> Vec<ProfileSample> {
        self.samples
            .iter()
            .map(|(r, u)| ProfileSample {
                r: render_rat(r),
                u: u.render_mid(digits),
                err: render_sci_up(&u.err(), 3),
            })
            .collect()
    }
}

/// Samples `e^-w u(r)` at `r = i / n_samples`, `i = 0..=n_samples`.
pub fn radial_profile(
    zero: &ZeroRecord,
    n_samples: u32,
    cfg: &EvalConfig,
) -> Result<RadialProfile, SpectrumError> {
    if zero.kind != ZeroKind::Plate {
        return Err(SpectrumError::InvalidArgument(
            "radial profiles are defined for plate zeros".into(),
        ));
    }
    if n_samples == 0 {
        return Err(SpectrumError::InvalidArgument("need at least one sample".into()));
    }
    let m = zero.m;
    let prec = cfg.prec_bits();
    let w = zero.mid();
    let mut at_w = Evaluator::new(Arg::Point(w.clone()), prec, m);
    let (jw, iw) = at_w.pair(m);
    let e = at_w.exp_neg();
    let (jw, iw) = (jw.mul(&e), iw.mul(&e));

    let mut samples = Vec::with_capacity(n_samples as usize + 1);
    for i in 0..=n_samples {
        let r = rat(i as i64, n_samples as i64);
        let u = if i == n_samples {
            // the two products coincide at r = 1
            ErrFloat::exact_zero(jw.frac_bits())
        } else {
            let mut ev = Evaluator::new(Arg::Point(&w * &r), prec, m);
            let (j, ii) = ev.pair(m);
            iw.mul(&j).sub(&jw.mul(&ii))
        };
        samples.push((r, u));
    }

    let mut over = Evaluator::new(Arg::interval(zero.lo.clone(), zero.hi.clone()), prec, m + 1);
    let scaled_w = over.w(m).mul(&over.exp_neg());
    let frac = scaled_w.frac_bits();
    let w_ball = ErrFloat::from_interval(&zero.lo, &zero.hi, frac);
    let du1 = w_ball.mul(&scaled_w).neg();

    Ok(RadialProfile {
        m,
        k: zero.k,
        w,
        samples,
        du1,
    })
}
